#include "fn/cli.hpp"

int main(int argc, char** argv) { return fn::run_cli(argc, argv); }
