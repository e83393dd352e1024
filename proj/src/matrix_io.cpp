#include "fn/matrix_io.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <tuple>
#include <vector>

namespace fn {

namespace {

std::string rational_token(const Rational& r) {
    return r.get_num().get_str() + "/" + r.get_den().get_str();
}

Rational parse_rational(const std::string& token, long line_no) {
    mpq_class r;
    if (r.set_str(token, 10) != 0)
        throw std::runtime_error("line " + std::to_string(line_no) + ": bad rational '" + token +
                                 "'");
    if (r.get_den() == 0)
        throw std::runtime_error("line " + std::to_string(line_no) + ": zero denominator in '" +
                                 token + "'");
    r.canonicalize();
    return r;
}

struct Header {
    long rows = 0, cols = 0, order = 0;
};

// Reads the header and streams entry lines to sink(row, col, coeffs, line_no).
template <class Sink>
Header read_lines(std::istream& in, Sink&& sink) {
    std::string line;
    long line_no = 0;
    Header h;
    bool have_header = false;
    long phi = 0;
    std::set<std::pair<long, long>> seen;
    while (std::getline(in, line)) {
        ++line_no;
        std::istringstream s(line);
        if (!have_header) {
            if (!(s >> h.rows >> h.cols >> h.order))
                throw std::runtime_error("line " + std::to_string(line_no) +
                                         ": expected header 'rows cols order'");
            std::string extra;
            if (s >> extra)
                throw std::runtime_error("line " + std::to_string(line_no) +
                                         ": trailing token '" + extra + "' after header");
            if (h.rows < 0 || h.cols < 0 || h.order < 1)
                throw std::runtime_error("line " + std::to_string(line_no) +
                                         ": invalid header dimensions");
            phi = euler_phi(h.order);
            have_header = true;
            continue;
        }
        std::string first;
        if (!(s >> first))
            continue;  // blank line
        long r, c;
        try {
            size_t used = 0;
            r = std::stol(first, &used);
            if (used != first.size())
                throw std::invalid_argument(first);
        } catch (const std::exception&) {
            throw std::runtime_error("line " + std::to_string(line_no) + ": bad row index '" +
                                     first + "'");
        }
        if (!(s >> c))
            throw std::runtime_error("line " + std::to_string(line_no) + ": missing column index");
        if (r < 0 || r >= h.rows || c < 0 || c >= h.cols)
            throw std::runtime_error("line " + std::to_string(line_no) + ": entry (" +
                                     std::to_string(r) + ", " + std::to_string(c) +
                                     ") outside a " + std::to_string(h.rows) + " x " +
                                     std::to_string(h.cols) + " matrix");
        if (!seen.insert({r, c}).second)
            throw std::runtime_error("line " + std::to_string(line_no) + ": duplicate entry (" +
                                     std::to_string(r) + ", " + std::to_string(c) + ")");
        std::vector<Rational> coeffs;
        coeffs.reserve(static_cast<size_t>(phi));
        std::string token;
        while (s >> token)
            coeffs.push_back(parse_rational(token, line_no));
        if (static_cast<long>(coeffs.size()) != phi)
            throw std::runtime_error("line " + std::to_string(line_no) + ": expected " +
                                     std::to_string(phi) + " coefficients, found " +
                                     std::to_string(coeffs.size()));
        sink(r, c, coeffs, line_no);
    }
    if (!have_header)
        throw std::runtime_error("empty matrix file: missing header");
    return h;
}

template <class T, class Reader>
T read_file(const std::string& path, Reader&& reader) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open matrix file '" + path + "'");
    try {
        return reader(in);
    } catch (const std::runtime_error& e) {
        throw std::runtime_error("'" + path + "': " + e.what());
    }
}

template <class M>
void write_file(const std::string& path, const M& writer) {
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("cannot open matrix file '" + path + "' for writing");
    writer(out);
    out.flush();
    if (!out)
        throw std::runtime_error("failed writing matrix file '" + path + "'");
}

}  // namespace

void write_matrix(std::ostream& out, const SparseMatrix<Cyclotomic>& M, long order_d) {
    if (order_d < 1)
        throw std::invalid_argument("cyclotomic order must be at least 1");
    out << M.rows() << ' ' << M.cols() << ' ' << order_d << '\n';
    for (const auto& [idx, v] : M.entries()) {
        if (v.order() != order_d)
            throw std::invalid_argument("matrix entry lives in order " +
                                        std::to_string(v.order()) + ", expected " +
                                        std::to_string(order_d));
        out << idx.first << ' ' << idx.second;
        for (const Rational& c : v.coeffs())
            out << ' ' << rational_token(c);
        out << '\n';
    }
}

void write_matrix(std::ostream& out, const SparseMatrix<Integer>& M) {
    out << M.rows() << ' ' << M.cols() << ' ' << 1 << '\n';
    for (const auto& [idx, v] : M.entries())
        out << idx.first << ' ' << idx.second << ' ' << v.get_str() << "/1\n";
}

SparseMatrix<Cyclotomic> read_matrix(std::istream& in) {
    std::vector<std::tuple<long, long, std::vector<Rational>>> staged;
    Header h = read_lines(in, [&](long r, long c, const std::vector<Rational>& coeffs, long) {
        staged.emplace_back(r, c, coeffs);
    });
    SparseMatrix<Cyclotomic> M(h.rows, h.cols);
    for (const auto& [r, c, coeffs] : staged) {
        Cyclotomic v(h.order);
        for (size_t i = 0; i < coeffs.size(); ++i)
            v += Cyclotomic::from_rational(h.order, coeffs[i]) *
                 Cyclotomic::root_power(h.order, static_cast<long>(i));
        M.set(r, c, std::move(v));
    }
    return M;
}

SparseMatrix<Integer> read_integer_matrix(std::istream& in) {
    std::vector<std::tuple<long, long, Integer>> staged;
    Header h = read_lines(in, [&](long r, long c, const std::vector<Rational>& coeffs,
                                  long line_no) {
        if (coeffs.size() == 1 && coeffs[0].get_den() != 1)
            throw std::runtime_error("line " + std::to_string(line_no) +
                                     ": non-integral entry in an integer matrix");
        staged.emplace_back(r, c, coeffs.empty() ? Integer(0) : coeffs[0].get_num());
    });
    if (h.order != 1)
        throw std::runtime_error("integer matrix expected, file declares order " +
                                 std::to_string(h.order));
    SparseMatrix<Integer> M(h.rows, h.cols);
    for (const auto& [r, c, v] : staged)
        M.set(r, c, v);
    return M;
}

void write_matrix_file(const std::string& path, const SparseMatrix<Cyclotomic>& M, long order_d) {
    write_file(path, [&](std::ostream& out) { write_matrix(out, M, order_d); });
}

void write_matrix_file(const std::string& path, const SparseMatrix<Integer>& M) {
    write_file(path, [&](std::ostream& out) { write_matrix(out, M); });
}

SparseMatrix<Cyclotomic> read_matrix_file(const std::string& path) {
    return read_file<SparseMatrix<Cyclotomic>>(
        path, [](std::istream& in) { return read_matrix(in); });
}

SparseMatrix<Integer> read_integer_matrix_file(const std::string& path) {
    return read_file<SparseMatrix<Integer>>(
        path, [](std::istream& in) { return read_integer_matrix(in); });
}

std::string matrix_filename(long n, long m, long d, const TwistParams& tw) {
    std::string base = "boundary_n" + std::to_string(n) + "_m" + std::to_string(m) + "_d" +
                       std::to_string(d);
    long o = tw.order();
    if (o == 1)
        return base + ".mat";
    auto exponent_of = [o](const Cyclotomic& v, const char* name) {
        for (long e = 0; e < o; ++e)
            if (v == Cyclotomic::root_power(o, e))
                return e;
        throw std::invalid_argument(std::string("parameter ") + name +
                                    " is not a power of the declared root of unity");
    };
    return base + "_o" + std::to_string(o) + "_p" + std::to_string(exponent_of(tw.p, "p")) +
           "_q" + std::to_string(exponent_of(tw.q, "q")) + "_s" +
           std::to_string(exponent_of(tw.s, "s")) + ".mat";
}

}  // namespace fn
