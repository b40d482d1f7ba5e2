#include "psdparam/hessian.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>

namespace psdparam {

int CubicTerm::degree() const
{
    return static_cast<int>(std::count_if(indices.begin(), indices.end(), [](int i) { return i != 0; }));
}

CubicPolynomial::CubicPolynomial(std::size_t n, std::vector<CubicTerm> terms) : n_(n)
{
    std::map<std::array<int, 3>, double> merged;
    for (auto t : terms) {
        std::sort(t.indices.begin(), t.indices.end());
        for (int i : t.indices)
            if (i < 0 || static_cast<std::size_t>(i) > n)
                throw std::invalid_argument("CubicPolynomial: variable index out of range");
        merged[t.indices] += t.coefficient;
    }
    for (const auto& [idx, c] : merged)
        if (c != 0.0)
            terms_.push_back({c, idx});
}

CubicPolynomial CubicPolynomial::with_num_vars(std::size_t n) const
{
    if (n < n_)
        throw std::invalid_argument("CubicPolynomial: cannot shrink the variable count");
    CubicPolynomial f = *this;
    f.n_ = n;
    return f;
}

double CubicPolynomial::operator()(std::span<const double> x) const
{
    if (x.size() != n_)
        throw std::invalid_argument("CubicPolynomial: point has wrong dimension");
    double s = 0.0;
    for (const auto& t : terms_) {
        double v = t.coefficient;
        for (int i : t.indices)
            if (i != 0)
                v *= x[static_cast<std::size_t>(i - 1)];
        s += v;
    }
    return s;
}

ParseError::ParseError(Kind kind, std::size_t position, const std::string& message)
    : std::runtime_error(message + " at position " + std::to_string(position)), kind_(kind), position_(position)
{
}

namespace {

class PolyParser {
public:
    explicit PolyParser(std::string_view text) : s_(text) {}

    CubicPolynomial parse()
    {
        std::vector<CubicTerm> terms;
        skip_ws();
        double sign = 1.0;
        if (peek() == '+' || peek() == '-') {
            sign = take() == '-' ? -1.0 : 1.0;
            skip_ws();
        }
        terms.push_back(term(sign));
        skip_ws();
        while (!at_end()) {
            const char op = peek();
            if (op != '+' && op != '-')
                throw ParseError(ParseError::Kind::syntax, pos_, std::string("expected '+' or '-', found '") + op + "'");
            take();
            skip_ws();
            terms.push_back(term(op == '-' ? -1.0 : 1.0));
            skip_ws();
        }
        return CubicPolynomial(static_cast<std::size_t>(max_index_), std::move(terms));
    }

private:
    CubicTerm term(double sign)
    {
        const std::size_t start = pos_;
        CubicTerm t;
        t.coefficient = sign;
        std::vector<int> vars;
        bool any = false;
        if (starts_number()) {
            t.coefficient *= number();
            any = true;
            skip_ws();
            if (peek() == '*') {
                take();
                skip_ws();
                if (!starts_var())
                    throw ParseError(ParseError::Kind::syntax, pos_, "expected a variable after '*'");
            }
        }
        while (starts_var()) {
            any = true;
            const std::size_t var_pos = pos_;
            const int idx = variable();
            skip_ws();
            int power = 1;
            if (peek() == '^') {
                take();
                skip_ws();
                const std::size_t exp_pos = pos_;
                if (!std::isdigit(static_cast<unsigned char>(peek())))
                    throw ParseError(ParseError::Kind::syntax, exp_pos, "expected an integer exponent");
                power = integer();
                if (power < 1 || power > 3)
                    throw ParseError(ParseError::Kind::degree, exp_pos, "exponent must be 1, 2 or 3");
            }
            for (int k = 0; k < power; ++k)
                vars.push_back(idx);
            if (vars.size() > 3)
                throw ParseError(ParseError::Kind::degree, var_pos, "term has total degree greater than 3");
            skip_ws();
            if (peek() == '*') {
                take();
                skip_ws();
                if (!starts_var())
                    throw ParseError(ParseError::Kind::syntax, pos_, "expected a variable after '*'");
            }
        }
        if (!any)
            throw ParseError(ParseError::Kind::syntax, start, "expected a coefficient or a variable");
        for (std::size_t k = 0; k < vars.size(); ++k)
            t.indices[k] = vars[k];
        return t;
    }

    bool starts_number() const
    {
        const char c = peek();
        return std::isdigit(static_cast<unsigned char>(c)) || c == '.';
    }

    bool starts_var() const { return std::isalpha(static_cast<unsigned char>(peek())) != 0; }

    double number()
    {
        const std::size_t start = pos_;
        while (std::isdigit(static_cast<unsigned char>(peek())) || peek() == '.')
            take();
        // scientific notation only when 'e' is followed by a digit or a signed digit
        if ((peek() == 'e' || peek() == 'E')) {
            const std::size_t save = pos_;
            take();
            if (peek() == '+' || peek() == '-')
                take();
            if (std::isdigit(static_cast<unsigned char>(peek()))) {
                while (std::isdigit(static_cast<unsigned char>(peek())))
                    take();
            } else {
                pos_ = save;
            }
        }
        const std::string_view tok = s_.substr(start, pos_ - start);
        double v = 0.0;
        const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
        if (ec != std::errc() || ptr != tok.data() + tok.size())
            throw ParseError(ParseError::Kind::syntax, start, "malformed number '" + std::string(tok) + "'");
        return v;
    }

    int integer()
    {
        const std::size_t start = pos_;
        while (std::isdigit(static_cast<unsigned char>(peek())))
            take();
        int v = 0;
        const std::string_view tok = s_.substr(start, pos_ - start);
        const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
        if (ec != std::errc())
            throw ParseError(ParseError::Kind::syntax, start, "integer out of range");
        return v;
    }

    int variable()
    {
        const std::size_t start = pos_;
        const char c = take();
        int idx = 0;
        if (c == 'x' && std::isdigit(static_cast<unsigned char>(peek()))) {
            idx = integer();
            if (idx < 1)
                throw ParseError(ParseError::Kind::unknown_variable, start, "variable indices start at 1");
        } else if (c == 'x') {
            idx = 1;
        } else if (c == 'y') {
            idx = 2;
        } else if (c == 'z') {
            idx = 3;
        } else {
            throw ParseError(ParseError::Kind::unknown_variable, start,
                             std::string("unknown variable '") + c + "' (use x1..xn or x, y, z)");
        }
        max_index_ = std::max(max_index_, idx);
        return idx;
    }

    void skip_ws()
    {
        while (!at_end() && std::isspace(static_cast<unsigned char>(s_[pos_])))
            ++pos_;
    }
    bool at_end() const { return pos_ >= s_.size(); }
    char peek() const { return at_end() ? '\0' : s_[pos_]; }
    char take() { return s_[pos_++]; }

    std::string_view s_;
    std::size_t pos_ = 0;
    int max_index_ = 0;
};

} // namespace

CubicPolynomial parse_polynomial(std::string_view text) { return PolyParser(text).parse(); }

std::string to_string(const CubicPolynomial& f)
{
    if (f.terms().empty())
        return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& t : f.terms()) {
        const double mag = std::abs(t.coefficient);
        if (first)
            os << (t.coefficient < 0 ? "-" : "");
        else
            os << (t.coefficient < 0 ? " - " : " + ");
        first = false;
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.17g", mag);
        os << buf;
        int i = 0;
        while (i < 3) {
            const int idx = t.indices[static_cast<std::size_t>(i)];
            int run = 1;
            while (i + run < 3 && t.indices[static_cast<std::size_t>(i + run)] == idx)
                ++run;
            if (idx != 0) {
                os << "*x" << idx;
                if (run > 1)
                    os << '^' << run;
            }
            i += run;
        }
    }
    return os.str();
}

ParametricSymMatrix hessian(const CubicPolynomial& f, const ParameterBox& box)
{
    const std::size_t n = f.num_vars();
    if (box.size() != n) {
        std::ostringstream os;
        os << "hessian: polynomial has " << n << " variables but the box has " << box.size();
        throw std::invalid_argument(os.str());
    }
    std::vector<Matrix> parts(n + 1, Matrix(n, n));

    for (const auto& t : f.terms()) {
        std::map<int, int> exps;
        for (int i : t.indices)
            if (i != 0)
                ++exps[i];
        for (auto ia = exps.begin(); ia != exps.end(); ++ia) {
            for (auto ib = ia; ib != exps.end(); ++ib) {
                std::map<int, int> rest = exps;
                double factor = t.coefficient;
                if (ia == ib) {
                    if (ia->second < 2)
                        continue;
                    factor *= ia->second * (ia->second - 1);
                    rest[ia->first] -= 2;
                } else {
                    factor *= ia->second * ib->second;
                    rest[ia->first] -= 1;
                    rest[ib->first] -= 1;
                }
                // at most one variable remains since the degree is <= 3
                std::size_t target = n;
                for (const auto& [var, e] : rest)
                    if (e > 0)
                        target = static_cast<std::size_t>(var - 1);
                const auto a = static_cast<std::size_t>(ia->first - 1);
                const auto b = static_cast<std::size_t>(ib->first - 1);
                parts[target](a, b) += factor;
                if (a != b)
                    parts[target](b, a) += factor;
            }
        }
    }

    std::vector<SymMatrix> coeffs;
    coeffs.reserve(n + 1);
    for (const auto& m : parts)
        coeffs.emplace_back(m);
    std::vector<Interval> intervals = box.intervals();
    intervals.push_back(Interval::point(1.0));
    return ParametricSymMatrix(std::move(coeffs), ParameterBox(std::move(intervals)));
}

ConvexityReport certify_convexity(const CubicPolynomial& f, const ParameterBox& box, const Options& opt)
{
    const ParametricSymMatrix h = hessian(f, box);
    ConvexityReport report;
    report.verdict = decide(h, Goal::strong_psd, opt);
    report.relaxation = relax(h);
    const std::size_t n = h.dim();
    if (n >= 1 && n - 1 < 63 && (std::uint64_t{1} << (n - 1)) <= opt.vertex_budget) {
        report.relaxation_strong_psd = strong_psd_interval(report.relaxation, opt);
        report.hertz_min_eig = hertz_min_eig(report.relaxation, opt.exec);
    }
    if (n >= 1)
        report.weyl_min_eig_bound = weyl_min_eig_bound(report.relaxation);
    return report;
}

} // namespace psdparam
