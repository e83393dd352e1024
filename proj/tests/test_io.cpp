// Serialization of sparse matrices and the golden boundary-matrix files.
//
// The text format is frozen byte-for-byte on hand examples, round-tripped on
// representative cyclotomic matrices, and every malformed-input path must
// fail naming the offending line.  The golden files pin the basis enumeration
// order: each checked-in file must equal the freshly computed boundary matrix
// entry-for-entry, so any change to cell ordering or signs is caught as a
// file-level regression.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "fn/foxneuwirth.hpp"
#include "fn/matrix_io.hpp"

using namespace fn;

namespace {

template <class T>
bool same_matrix(const SparseMatrix<T>& a, const SparseMatrix<T>& b) {
    return a.rows() == b.rows() && a.cols() == b.cols() && a.entries() == b.entries();
}

std::string golden_path(const std::string& name) {
    return std::string(FN_TEST_DATA_DIR) + "/" + name;
}

std::string render(const SparseMatrix<Cyclotomic>& M, long order) {
    std::ostringstream out;
    write_matrix(out, M, order);
    return out.str();
}

Cyclotomic zeta_combo(long order, long exp, const Rational& scale) {
    return Cyclotomic::from_rational(order, scale) * Cyclotomic::root_power(order, exp);
}

}  // namespace

TEST_CASE("the text form of small matrices is frozen") {
    SparseMatrix<Integer> A(2, 2);
    A.set(0, 1, Integer(-7));
    std::ostringstream out;
    write_matrix(out, A);
    CHECK(out.str() == "2 2 1\n0 1 -7/1\n");

    SparseMatrix<Cyclotomic> B(1, 1);
    B.set(0, 0, Cyclotomic::root_power(4, 1));
    CHECK(render(B, 4) == "1 1 4\n0 0 0/1 1/1\n");

    SparseMatrix<Cyclotomic> Z(3, 5);
    CHECK(render(Z, 2) == "3 5 2\n");
}

TEST_CASE("matrices round-trip through the text format") {
    SparseMatrix<Cyclotomic> M(4, 3);
    M.set(0, 0, zeta_combo(12, 3, make_rational(5, 6)));
    M.set(2, 1, zeta_combo(12, 7, make_rational(-2, 1)) + Cyclotomic::from_integer(12, 9));
    M.set(3, 2, Cyclotomic::from_rational(12, make_rational(-1, 4)));
    std::stringstream buf;
    write_matrix(buf, M, 12);
    SparseMatrix<Cyclotomic> back = read_matrix(buf);
    CHECK(same_matrix(M, back));

    SparseMatrix<Integer> N(5, 2);
    N.set(0, 0, Integer(42));
    N.set(4, 1, Integer(-1));
    std::stringstream ibuf;
    write_matrix(ibuf, N);
    CHECK(same_matrix(N, read_integer_matrix(ibuf)));

    // An integer matrix is also readable as a cyclotomic matrix of order 1.
    std::stringstream ibuf2;
    write_matrix(ibuf2, N);
    SparseMatrix<Cyclotomic> NC = read_matrix(ibuf2);
    CHECK(NC.rows() == 5);
    REQUIRE(NC.get(0, 0) != nullptr);
    CHECK(NC.get(0, 0)->rational_value() == 42);

    std::stringstream empty_m;
    write_matrix(empty_m, SparseMatrix<Cyclotomic>(0, 0), 1);
    SparseMatrix<Cyclotomic> E = read_matrix(empty_m);
    CHECK(E.rows() == 0);
    CHECK(E.nnz() == 0);
}

TEST_CASE("the reader tolerates bare integers and blank lines") {
    std::istringstream in("2 2 1\n\n0 0 5\n\n1 1 -3/1\n");
    SparseMatrix<Integer> M = read_integer_matrix(in);
    REQUIRE(M.get(0, 0) != nullptr);
    CHECK(*M.get(0, 0) == 5);
    REQUIRE(M.get(1, 1) != nullptr);
    CHECK(*M.get(1, 1) == -3);
}

TEST_CASE("malformed input fails naming the offending line") {
    auto read_err = [](const std::string& text) {
        std::istringstream in(text);
        try {
            read_matrix(in);
            return std::string("(no error)");
        } catch (const std::runtime_error& e) {
            return std::string(e.what());
        }
    };
    CHECK(read_err("").find("missing header") != std::string::npos);
    CHECK(read_err("2 2\n").find("line 1") != std::string::npos);
    CHECK(read_err("1 1 1 9\n").find("trailing token") != std::string::npos);
    CHECK(read_err("1 1 0\n").find("invalid header") != std::string::npos);
    CHECK(read_err("1 1 1\nx 0 1/1\n").find("bad row index") != std::string::npos);
    CHECK(read_err("1 1 1\n0 0 1/0\n").find("zero denominator") != std::string::npos);
    CHECK(read_err("1 1 1\n0 0 one\n").find("bad rational") != std::string::npos);
    CHECK(read_err("1 1 1\n0 0 1/1 2/1\n").find("expected 1 coefficients") != std::string::npos);
    CHECK(read_err("1 1 3\n0 0 1/1\n").find("expected 2 coefficients") != std::string::npos);
    CHECK(read_err("1 1 1\n0 5 1/1\n").find("outside") != std::string::npos);
    CHECK(read_err("2 2 1\n1 1 1/1\n1 1 2/1\n") == "line 3: duplicate entry (1, 1)");

    std::istringstream wrong_order("1 1 2\n0 0 1/1\n");
    CHECK_THROWS_WITH_AS(read_integer_matrix(wrong_order),
                         "integer matrix expected, file declares order 2", std::runtime_error);
    std::istringstream fractional("1 1 1\n0 0 1/2\n");
    CHECK_THROWS_AS(read_integer_matrix(fractional), std::runtime_error);

    SparseMatrix<Cyclotomic> M(1, 1);
    M.set(0, 0, Cyclotomic::root_power(2, 1));
    std::ostringstream sink;
    CHECK_THROWS_AS(write_matrix(sink, M, 4), std::invalid_argument);
    CHECK_THROWS_AS(write_matrix(sink, M, 0), std::invalid_argument);
}

TEST_CASE("file errors carry the path") {
    try {
        read_matrix_file("/nonexistent/never.mat");
        FAIL("expected an open failure");
    } catch (const std::runtime_error& e) {
        CHECK(std::string(e.what()).find("/nonexistent/never.mat") != std::string::npos);
    }

    namespace fs = std::filesystem;
    fs::path tmp = fs::temp_directory_path() / "fnhom_io_test.mat";
    {
        std::ofstream out(tmp);
        out << "1 1 1\n0 0 broken\n";
    }
    try {
        read_matrix_file(tmp.string());
        FAIL("expected a parse failure");
    } catch (const std::runtime_error& e) {
        std::string msg = e.what();
        CHECK(msg.find(tmp.string()) != std::string::npos);
        CHECK(msg.find("line 2") != std::string::npos);
    }
    fs::remove(tmp);
}

TEST_CASE("boundary matrix file names encode the parameters") {
    CHECK(matrix_filename(2, 1, 3, TwistParams::untwisted()) == "boundary_n2_m1_d3.mat");
    CHECK(matrix_filename(3, 2, 5, TwistParams::from_root_powers(2, 1, 0, 0)) ==
          "boundary_n3_m2_d5_o2_p1_q0_s0.mat");
    CHECK(matrix_filename(4, 0, 6, TwistParams::from_root_powers(12, 4, 3, 1)) ==
          "boundary_n4_m0_d6_o12_p4_q3_s1.mat");

    TwistParams rational_s(Cyclotomic::root_power(2, 1), Cyclotomic::from_integer(2, 1),
                           Cyclotomic::from_integer(2, 2));
    CHECK_THROWS_AS(matrix_filename(2, 1, 3, rational_s), std::invalid_argument);
}

TEST_CASE("golden files equal freshly computed boundary matrices") {
    long compared = 0;
    for (long n = 1; n <= 5; ++n)
        for (long m = 0; n + m <= 5; ++m) {
            ChainComplex cx(n, m);
            for (long d = cx.dim_min() + 1; d <= cx.dim_max(); ++d) {
                std::string name = matrix_filename(n, m, d, TwistParams::untwisted());
                CAPTURE(name);
                SparseMatrix<Integer> stored = read_integer_matrix_file(golden_path(name));
                CHECK(same_matrix(stored, boundary_untwisted(cx, d)));
                ++compared;
            }
        }
    CHECK(compared == 30);

    TwistParams minus(TwistParams::from_root_powers(2, 1, 0, 0));
    long twisted = 0;
    for (auto [n, m] : {std::pair<long, long>{2, 1}, {3, 2}}) {
        ChainComplex cx(n, m);
        for (long d = cx.dim_min() + 1; d <= cx.dim_max(); ++d) {
            std::string name = matrix_filename(n, m, d, minus);
            CAPTURE(name);
            SparseMatrix<Cyclotomic> stored = read_matrix_file(golden_path(name));
            CHECK(same_matrix(stored, boundary_twisted(cx, d, minus)));
            ++twisted;
        }
    }
    CHECK(twisted == 5);
}

TEST_CASE("a corrupted golden file is detected and named") {
    namespace fs = std::filesystem;
    std::string name = matrix_filename(2, 1, 3, TwistParams::untwisted());
    fs::path tmp = fs::temp_directory_path() / ("corrupt_" + name);
    fs::copy_file(golden_path(name), tmp, fs::copy_options::overwrite_existing);

    // Value corruption: negate the last entry's coefficient.  The file still
    // parses, but no longer matches the computed matrix.
    std::string text;
    {
        std::ifstream in(tmp);
        std::ostringstream buf;
        buf << in.rdbuf();
        text = buf.str();
    }
    size_t slash = text.rfind("/1\n");
    REQUIRE(slash != std::string::npos);
    size_t num_start = text.rfind(' ', slash) + 1;
    std::string entry = text.substr(num_start, slash - num_start);
    std::string flipped = entry[0] == '-' ? entry.substr(1) : "-" + entry;
    {
        std::ofstream out(tmp);
        out << text.substr(0, num_start) << flipped << text.substr(slash);
    }
    ChainComplex cx(2, 1);
    CHECK_FALSE(same_matrix(read_integer_matrix_file(tmp.string()),
                            boundary_untwisted(cx, 3)));

    // Structural corruption: the failure names the file and the line.
    {
        std::ofstream out(tmp, std::ios::app);
        out << "0 0 what\n";
    }
    try {
        read_integer_matrix_file(tmp.string());
        FAIL("expected a parse failure");
    } catch (const std::runtime_error& e) {
        CHECK(std::string(e.what()).find(tmp.string()) != std::string::npos);
    }
    fs::remove(tmp);
}
