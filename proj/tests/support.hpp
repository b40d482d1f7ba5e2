#pragma once

// Hand-rolled generators and a small JSON-schema checker shared by the tests.

#include "psdparam/hessian.hpp"
#include "psdparam/parametric.hpp"

#include <json.hpp>

#include <sys/wait.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <array>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

namespace testsupport {

using psdparam::Interval;
using psdparam::Matrix;
using psdparam::ParameterBox;
using psdparam::ParametricSymMatrix;
using psdparam::SymMatrix;

class Gen {
public:
    explicit Gen(std::uint64_t seed) : rng_(seed) {}

    double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
    int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
    bool coin(double p = 0.5) { return std::bernoulli_distribution(p)(rng_); }
    std::mt19937_64& engine() { return rng_; }

    SymMatrix symmetric(std::size_t n, double lo = -2.0, double hi = 2.0)
    {
        SymMatrix s(n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i; j < n; ++j)
                s.set(i, j, uniform(lo, hi));
        return s;
    }

    // B B^T with B n x r, r <= n, entries scaled into roughly [-2, 2].
    SymMatrix psd(std::size_t n)
    {
        const auto r = static_cast<std::size_t>(integer(1, static_cast<int>(n)));
        Matrix b(n, r);
        for (auto& v : b.data())
            v = uniform(-1.0, 1.0);
        Matrix m = b * b.transpose();
        m *= 2.0 / static_cast<double>(r);
        return SymMatrix(m);
    }

    Interval interval(double lo, double hi)
    {
        double a = uniform(lo, hi);
        double b = uniform(lo, hi);
        if (a > b)
            std::swap(a, b);
        if (coin(0.1))
            b = a;
        return {a, b};
    }

    // The property corpus: n <= 4, K <= 4, entries in [-2,2], boxes in [-1,2].
    ParametricSymMatrix instance(std::size_t max_n = 4, std::size_t max_k = 4)
    {
        const auto n = static_cast<std::size_t>(integer(1, static_cast<int>(max_n)));
        const auto k = static_cast<std::size_t>(integer(1, static_cast<int>(max_k)));
        std::vector<SymMatrix> coeffs;
        std::vector<Interval> box;
        for (std::size_t i = 0; i < k; ++i) {
            // bias towards definite-ish instances so every verdict shows up
            if (coin(0.35))
                coeffs.push_back(coin(0.8) ? psd(n) : -psd(n));
            else
                coeffs.push_back(symmetric(n));
            box.push_back(interval(-1.0, 2.0));
        }
        return {std::move(coeffs), ParameterBox(std::move(box))};
    }

    // Every coefficient PSD or NSD.
    ParametricSymMatrix semidefinite_instance(std::size_t max_n = 4, std::size_t max_k = 4)
    {
        const auto n = static_cast<std::size_t>(integer(1, static_cast<int>(max_n)));
        const auto k = static_cast<std::size_t>(integer(1, static_cast<int>(max_k)));
        std::vector<SymMatrix> coeffs;
        std::vector<Interval> box;
        for (std::size_t i = 0; i < k; ++i) {
            coeffs.push_back(coin(0.7) ? psd(n) : -psd(n));
            box.push_back(interval(-1.0, 2.0));
        }
        return {std::move(coeffs), ParameterBox(std::move(box))};
    }

    double in(const Interval& v)
    {
        if (v.degenerate())
            return v.inf();
        return std::clamp(uniform(v.inf(), v.sup()), v.inf(), v.sup());
    }

    std::vector<double> point_in(const ParameterBox& box)
    {
        std::vector<double> p(box.size());
        for (std::size_t k = 0; k < box.size(); ++k)
            p[k] = in(box[k]);
        return p;
    }

private:
    std::mt19937_64 rng_;
};

inline ParametricSymMatrix example1()
{
    return {{SymMatrix{{1, 1}, {1, 1}}}, ParameterBox({Interval(0, 1)})};
}

inline ParametricSymMatrix example2()
{
    return {{SymMatrix{{1.5, 0}, {0, 1.1}}, SymMatrix{{-1, 1}, {1, 1}}},
            ParameterBox({Interval(1, 1), Interval(0, 1)})};
}

inline ParametricSymMatrix example3()
{
    return {{SymMatrix{{3.3, 0.25}, {0.25, 3.3}}, SymMatrix{{1, 2}, {2, 0}}, SymMatrix{{0, 2}, {2, 1}}},
            ParameterBox({Interval(1, 1), Interval(0, 1), Interval(0, 1)})};
}

inline double max_abs_diff(const Matrix& a, const std::vector<std::vector<double>>& b)
{
    return psdparam::max_abs_diff(a, Matrix::from_rows(b));
}

// Validates `doc` against the subset of draft-07 used by the report schema:
// type, required, properties, additionalProperties (bool or schema), enum,
// items and minimum. Returns "" on success, else the first violation.
inline std::string validate(const nlohmann::json& doc, const nlohmann::json& schema, const std::string& path = "$")
{
    using nlohmann::json;
    const auto type_ok = [&](const std::string& t) {
        if (t == "object")
            return doc.is_object();
        if (t == "array")
            return doc.is_array();
        if (t == "string")
            return doc.is_string();
        if (t == "integer")
            return doc.is_number_integer() || doc.is_number_unsigned();
        if (t == "number")
            return doc.is_number();
        if (t == "boolean")
            return doc.is_boolean();
        if (t == "null")
            return doc.is_null();
        return false;
    };
    if (schema.contains("type")) {
        const json& t = schema["type"];
        bool ok = false;
        if (t.is_string())
            ok = type_ok(t.get<std::string>());
        else
            for (const auto& alt : t)
                ok = ok || type_ok(alt.get<std::string>());
        if (!ok)
            return path + ": type mismatch, expected " + t.dump();
    }
    if (schema.contains("enum")) {
        bool found = false;
        for (const auto& e : schema["enum"])
            found = found || e == doc;
        if (!found)
            return path + ": value " + doc.dump() + " not in enum";
    }
    if (schema.contains("minimum") && doc.is_number() && doc.get<double>() < schema["minimum"].get<double>())
        return path + ": below minimum";
    if (doc.is_object()) {
        if (schema.contains("required"))
            for (const auto& r : schema["required"])
                if (!doc.contains(r.get<std::string>()))
                    return path + ": missing required \"" + r.get<std::string>() + "\"";
        const json props = schema.value("properties", json::object());
        for (const auto& [key, value] : doc.items()) {
            if (props.contains(key)) {
                if (auto e = validate(value, props[key], path + "." + key); !e.empty())
                    return e;
            } else if (schema.contains("additionalProperties")) {
                const json& ap = schema["additionalProperties"];
                if (ap.is_boolean()) {
                    if (!ap.get<bool>())
                        return path + ": unexpected property \"" + key + "\"";
                } else if (auto e = validate(value, ap, path + "." + key); !e.empty()) {
                    return e;
                }
            }
        }
    }
    if (doc.is_array() && schema.contains("items")) {
        std::size_t i = 0;
        for (const auto& item : doc)
            if (auto e = validate(item, schema["items"], path + "[" + std::to_string(i++) + "]"); !e.empty())
                return e;
    }
    return "";
}

inline psdparam::CubicPolynomial random_cubic(Gen& g, std::size_t n)
{
    std::vector<psdparam::CubicTerm> terms;
    const int count = g.integer(1, 8);
    for (int t = 0; t < count; ++t) {
        psdparam::CubicTerm term;
        term.coefficient = std::round(g.uniform(-5, 5) * 4) / 4;
        for (auto& i : term.indices)
            i = g.integer(0, static_cast<int>(n));
        terms.push_back(term);
    }
    return psdparam::CubicPolynomial(n, terms);
}

// Central differences on f itself, step h.
inline Matrix fd_hessian(const psdparam::CubicPolynomial& f, const std::vector<double>& x, double h)
{
    const std::size_t n = x.size();
    Matrix out(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            auto at = [&](double di, double dj) {
                std::vector<double> y = x;
                y[i] += di;
                y[j] += dj;
                return f(y);
            };
            out(i, j) = (at(h, h) - at(h, -h) - at(-h, h) + at(-h, -h)) / (4 * h * h);
        }
    return out;
}

struct RunResult {
    int exit_code = -1;
    std::string out;
};

// Runs a shell command, capturing stdout (stderr is discarded).
inline RunResult run(const std::string& command)
{
    RunResult r;
    FILE* pipe = popen((command + " 2>/dev/null").c_str(), "r");
    if (!pipe)
        return r;
    std::array<char, 4096> buf{};
    std::size_t got = 0;
    while ((got = std::fread(buf.data(), 1, buf.size(), pipe)) > 0)
        r.out.append(buf.data(), got);
    const int status = pclose(pipe);
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

} // namespace testsupport
