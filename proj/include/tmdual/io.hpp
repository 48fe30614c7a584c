#pragma once

#include <cctype>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "tmodule.hpp"
#include "transform.hpp"

namespace tmdual {

// ---------------------------------------------------------------------------
// serialization (canonical forms)

inline std::string to_string(const DensePoly& f) {
    if (f.is_zero()) return "0";
    std::string out;
    for (int i = f.degree(); i >= 0; --i) {
        std::uint32_t c = f.coeff(i);
        if (c == 0) continue;
        if (!out.empty()) out += " + ";
        if (i == 0) {
            out += std::to_string(c);
        } else {
            if (c != 1) {
                out += std::to_string(c);
                out += "*";
            }
            out += "T";
            if (i != 1) {
                out += "^";
                out += std::to_string(i);
            }
        }
    }
    return out;
}

inline std::string to_string(const RatFunc& x) {
    std::string out = to_string(x.num());
    if (!x.den().is_one()) {
        out += " / ";
        out += to_string(x.den());
    }
    return out;
}

inline std::string to_string(const SkewPoly& a) {
    if (a.is_zero()) return "0";
    std::string out;
    for (int i = 0; i <= a.degree(); ++i) {
        if (a.coeff(i).is_zero()) continue;
        if (!out.empty()) out += " + ";
        out += "(" + to_string(a.coeff(i)) + ")";
        if (i > 0) {
            out += "t#";
            out += std::to_string(i);
        }
    }
    return out;
}

inline std::string to_string(const LMatrix& m) {
    std::string out = "[";
    for (std::size_t i = 0; i < m.rows(); ++i) {
        out += i == 0 ? "[" : ", [";
        for (std::size_t j = 0; j < m.cols(); ++j) {
            if (j) out += ", ";
            out += to_string(m.at(i, j));
        }
        out += "]";
    }
    return out + "]";
}

inline std::string to_string(const SkewMatrix& m) {
    std::string out = "[";
    for (std::size_t i = 0; i < m.rows(); ++i) {
        out += i == 0 ? "[" : ", [";
        for (std::size_t j = 0; j < m.cols(); ++j) {
            if (j) out += ", ";
            out += to_string(m.at(i, j));
        }
        out += "]";
    }
    return out + "]";
}

/// Canonical t-module document; M0 always uses the theta*I + N shorthand.
inline std::string to_string(const TModule& phi) {
    std::ostringstream os;
    os << "p " << phi.modulus() << "\n";
    os << "d " << phi.dim() << "\n";
    os << "n " << phi.deg_tau() << "\n";
    os << "M0 theta*I + " << to_string(phi.nilpotent_part()) << "\n";
    for (int i = 1; i <= phi.deg_tau(); ++i)
        os << "M" << i << " " << to_string(phi.coeff(i)) << "\n";
    return os.str();
}

// ---------------------------------------------------------------------------
// parsing

namespace detail {

class Cursor {
  public:
    Cursor(std::string_view s, std::string origin) : s_(s), origin_(std::move(origin)) {}

    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    bool done() {
        skip_ws();
        return pos_ >= s_.size();
    }
    char peek() {
        skip_ws();
        return pos_ < s_.size() ? s_[pos_] : '\0';
    }
    bool accept(char c) {
        skip_ws();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }
    bool accept_word(std::string_view w) {
        skip_ws();
        if (s_.substr(pos_, w.size()) == w) {
            pos_ += w.size();
            return true;
        }
        return false;
    }
    void expect(char c) {
        if (!accept(c)) fail(std::string("expected '") + c + "'");
    }
    std::uint64_t integer() {
        skip_ws();
        if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_])))
            fail("expected an integer");
        std::uint64_t v = 0;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
            v = v * 10 + (s_[pos_] - '0');
            if (v > (1ull << 40)) fail("integer out of range");
            ++pos_;
        }
        return v;
    }
    [[noreturn]] void fail(const std::string& msg) {
        throw parse_error(origin_ + ": " + msg + " at '" +
                          std::string(s_.substr(pos_, std::min<std::size_t>(16, s_.size() - pos_))) +
                          "'");
    }

  private:
    std::string_view s_;
    std::size_t pos_ = 0;
    std::string origin_;
};

inline DensePoly parse_poly(Cursor& c, std::uint32_t p) {
    DensePoly acc = DensePoly::zero(p);
    bool first = true;
    while (true) {
        int sign = 1;
        if (!first) {
            if (c.accept('+')) {
            } else if (c.accept('-')) {
                sign = -1;
            } else {
                break;
            }
        } else if (c.accept('-')) {
            sign = -1;
        }
        std::int64_t coeff = 1;
        bool have_coeff = false;
        if (std::isdigit(static_cast<unsigned char>(c.peek()))) {
            coeff = static_cast<std::int64_t>(c.integer() % p);
            have_coeff = true;
            c.accept('*');
        }
        std::size_t exp = 0;
        if (c.accept('T')) {
            exp = 1;
            if (c.accept('^')) exp = static_cast<std::size_t>(c.integer());
            if (exp > (1u << 20)) c.fail("exponent out of range");
        } else if (!have_coeff) {
            c.fail("expected a term");
        }
        acc = acc + DensePoly::monomial(p, sign * coeff, exp);
        first = false;
    }
    return acc;
}

inline RatFunc parse_ratfunc(Cursor& c, std::uint32_t p) {
    DensePoly num = parse_poly(c, p);
    if (c.accept('/')) {
        DensePoly den = parse_poly(c, p);
        if (den.is_zero()) c.fail("zero denominator");
        return RatFunc(std::move(num), std::move(den));
    }
    return RatFunc::from_poly(std::move(num));
}

inline SkewPoly parse_skewpoly(Cursor& c, std::uint32_t p) {
    SkewPoly acc = SkewPoly::zero(p);
    bool first = true;
    while (true) {
        if (!first && !c.accept('+')) break;
        RatFunc coeff = RatFunc::one(p);
        bool have_coeff = false;
        if (c.accept('(')) {
            coeff = parse_ratfunc(c, p);
            c.expect(')');
            have_coeff = true;
        }
        std::size_t exp = 0;
        if (c.accept_word("t#")) {
            exp = 1;
            if (std::isdigit(static_cast<unsigned char>(c.peek())))
                exp = static_cast<std::size_t>(c.integer());
        } else if (!have_coeff) {
            if (first && c.accept('0')) return acc;  // bare zero
            c.fail("expected '(' or 't#'");
        }
        acc = acc + SkewPoly::monomial(std::move(coeff), exp);
        first = false;
    }
    return acc;
}

template <typename Entry, typename ParseEntry>
std::vector<std::vector<Entry>> parse_matrix_rows(Cursor& c, ParseEntry parse_entry) {
    std::vector<std::vector<Entry>> rows;
    c.expect('[');
    while (true) {
        c.expect('[');
        std::vector<Entry> row;
        if (!c.accept(']')) {
            while (true) {
                row.push_back(parse_entry(c));
                if (c.accept(']')) break;
                c.expect(',');
            }
        }
        rows.push_back(std::move(row));
        if (c.accept(']')) break;
        c.expect(',');
    }
    if (rows.empty()) c.fail("empty matrix");
    for (const auto& r : rows)
        if (r.size() != rows[0].size()) c.fail("ragged matrix rows");
    return rows;
}

inline LMatrix parse_lmatrix(Cursor& c, std::uint32_t p) {
    auto rows = parse_matrix_rows<RatFunc>(c, [p](Cursor& cc) { return parse_ratfunc(cc, p); });
    LMatrix m(p, rows.size(), rows[0].size());
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < rows[i].size(); ++j) m.at(i, j) = rows[i][j];
    return m;
}

inline SkewMatrix parse_skewmatrix(Cursor& c, std::uint32_t p) {
    auto rows = parse_matrix_rows<SkewPoly>(c, [p](Cursor& cc) { return parse_skewpoly(cc, p); });
    SkewMatrix m(p, rows.size(), rows[0].size());
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < rows[i].size(); ++j) m.at(i, j) = rows[i][j];
    return m;
}

struct Document {
    std::vector<std::pair<std::string, std::string>> fields;  // key, raw value
    std::string origin;

    const std::string* find(const std::string& key) const {
        for (const auto& [k, v] : fields)
            if (k == key) return &v;
        return nullptr;
    }
    const std::string& need(const std::string& key) const {
        const std::string* v = find(key);
        if (!v) throw parse_error(origin + ": missing field '" + key + "'");
        return *v;
    }
};

inline Document read_document(std::istream& in, const std::string& origin) {
    Document doc;
    doc.origin = origin;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        // '#' starts a comment only at the line head or after whitespace;
        // 't#' is the tau token of the skew-polynomial grammar
        for (std::size_t h = 0; h < line.size(); ++h)
            if (line[h] == '#' &&
                (h == 0 || std::isspace(static_cast<unsigned char>(line[h - 1])))) {
                line.erase(h);
                break;
            }
        std::size_t a = line.find_first_not_of(" \t\r");
        if (a == std::string::npos) continue;
        std::size_t b = line.find_first_of(" \t=", a);
        if (b == std::string::npos)
            throw parse_error(origin + ":" + std::to_string(lineno) + ": expected 'key value'");
        std::string key = line.substr(a, b - a);
        std::size_t v = line.find_first_not_of(" \t=", b);
        std::string val = v == std::string::npos ? "" : line.substr(v);
        while (!val.empty() && (val.back() == '\r' || val.back() == ' ' || val.back() == '\t'))
            val.pop_back();
        doc.fields.emplace_back(std::move(key), std::move(val));
    }
    return doc;
}

}  // namespace detail

inline RatFunc parse_ratfunc(const std::string& text, std::uint32_t p,
                             const std::string& origin = "<ratfunc>") {
    detail::Cursor c(text, origin);
    RatFunc r = detail::parse_ratfunc(c, p);
    if (!c.done()) c.fail("trailing input");
    return r;
}

inline SkewPoly parse_skewpoly(const std::string& text, std::uint32_t p,
                               const std::string& origin = "<skewpoly>") {
    detail::Cursor c(text, origin);
    SkewPoly r = detail::parse_skewpoly(c, p);
    if (!c.done()) c.fail("trailing input");
    return r;
}

inline LMatrix parse_lmatrix(const std::string& text, std::uint32_t p,
                             const std::string& origin = "<matrix>") {
    detail::Cursor c(text, origin);
    LMatrix m = detail::parse_lmatrix(c, p);
    if (!c.done()) c.fail("trailing input");
    return m;
}

inline SkewMatrix parse_skewmatrix(const std::string& text, std::uint32_t p,
                                   const std::string& origin = "<matrix>") {
    detail::Cursor c(text, origin);
    SkewMatrix m = detail::parse_skewmatrix(c, p);
    if (!c.done()) c.fail("trailing input");
    return m;
}

/// t-module document: fields p, d, n and matrices M0..Mn; M0 accepts the
/// theta*I + N shorthand.
inline TModule parse_tmodule(std::istream& in, const std::string& origin) {
    detail::Document doc = detail::read_document(in, origin);
    std::uint32_t p = checked_prime(std::stoull(doc.need("p")));
    std::size_t d = std::stoull(doc.need("d"));
    std::size_t n = std::stoull(doc.need("n"));
    if (d == 0 || d > 64 || n > 16) throw parse_error(origin + ": unreasonable d or n");
    std::vector<LMatrix> coeffs;
    for (std::size_t i = 0; i <= n; ++i) {
        const std::string& raw = doc.need("M" + std::to_string(i));
        detail::Cursor c(raw, origin + ": M" + std::to_string(i));
        LMatrix m(p, d, d);
        if (i == 0 && c.accept_word("theta*I")) {
            c.expect('+');
            m = LMatrix::theta_identity(p, d) + detail::parse_lmatrix(c, p);
        } else {
            m = detail::parse_lmatrix(c, p);
        }
        if (!c.done()) c.fail("trailing input");
        if (m.rows() != d || m.cols() != d)
            throw parse_error(origin + ": M" + std::to_string(i) + " is not " +
                              std::to_string(d) + "x" + std::to_string(d));
        coeffs.push_back(std::move(m));
    }
    return TModule::make(std::move(coeffs));
}

inline TModule load_tmodule(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw parse_error(path + ": cannot open");
    return parse_tmodule(in, path);
}

struct BiderDocument {
    std::uint32_t p;
    std::vector<SkewPoly> entries;
};

/// biderivation document: fields p, width, e1..eD (skew polynomials)
inline BiderDocument parse_bider(std::istream& in, const std::string& origin) {
    detail::Document doc = detail::read_document(in, origin);
    std::uint32_t p = checked_prime(std::stoull(doc.need("p")));
    std::size_t width = std::stoull(doc.need("width"));
    if (width == 0 || width > 256) throw parse_error(origin + ": unreasonable width");
    BiderDocument bd{p, {}};
    for (std::size_t i = 1; i <= width; ++i)
        bd.entries.push_back(parse_skewpoly(doc.need("e" + std::to_string(i)), p,
                                            origin + ": e" + std::to_string(i)));
    return bd;
}

inline BiderDocument load_bider(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw parse_error(path + ": cannot open");
    return parse_bider(in, path);
}

inline std::string to_string(const BiderDocument& bd) {
    std::ostringstream os;
    os << "p " << bd.p << "\n";
    os << "width " << bd.entries.size() << "\n";
    for (std::size_t i = 0; i < bd.entries.size(); ++i)
        os << "e" << (i + 1) << " " << to_string(bd.entries[i]) << "\n";
    return os.str();
}

struct HomDocument {
    TModule source;
    TModule target;
    SkewMatrix mat;
};

/// morphism document: source and target t-module paths plus the matrix
/// (rows = dim target, cols = dim source); paths resolve relative to the
/// document's directory.
inline HomDocument parse_hom(std::istream& in, const std::string& origin,
                             const std::string& dir) {
    detail::Document doc = detail::read_document(in, origin);
    auto resolve = [&dir](const std::string& p) {
        if (!p.empty() && p[0] == '/') return p;
        return dir.empty() ? p : dir + "/" + p;
    };
    TModule src = load_tmodule(resolve(doc.need("source")));
    TModule tgt = load_tmodule(resolve(doc.need("target")));
    if (src.modulus() != tgt.modulus()) throw parse_error(origin + ": mixed moduli");
    SkewMatrix mat = parse_skewmatrix(doc.need("mat"), src.modulus(), origin + ": mat");
    return HomDocument{std::move(src), std::move(tgt), std::move(mat)};
}

inline HomDocument load_hom(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw parse_error(path + ": cannot open");
    auto slash = path.find_last_of('/');
    std::string dir = slash == std::string::npos ? "" : path.substr(0, slash);
    return parse_hom(in, path, dir);
}

}  // namespace tmdual
