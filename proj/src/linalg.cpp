#include "vortex/linalg.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace vortex {

using BigInt = boost::multiprecision::cpp_int;

Rat parse_rational(const std::string& text) {
    std::string s = text;
    s.erase(std::remove_if(s.begin(), s.end(), [](char c) { return c == ' '; }), s.end());
    if (s.empty()) throw InvalidInput("empty rational literal");
    auto valid = [](const std::string& part) {
        if (part.empty()) return false;
        std::size_t start = (part[0] == '-' || part[0] == '+') ? 1 : 0;
        if (start == part.size()) return false;
        return std::all_of(part.begin() + start, part.end(), [](char c) { return c >= '0' && c <= '9'; });
    };
    auto slash = s.find('/');
    if (slash == std::string::npos) {
        if (!valid(s)) throw InvalidInput("bad rational literal: " + text);
        return Rat(s);
    }
    std::string num = s.substr(0, slash), den = s.substr(slash + 1);
    if (!valid(num) || !valid(den)) throw InvalidInput("bad rational literal: " + text);
    Rat d(den);
    if (d == 0) throw InvalidInput("zero denominator: " + text);
    return Rat(num) / d;
}

std::string format_rational(const Rat& value) {
    std::ostringstream out;
    out << numerator(value);
    if (denominator(value) != 1) out << "/" << denominator(value);
    return out.str();
}

Rat dot(const RVec& a, const RVec& b) {
    Rat s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

Rat dot(const IVec& a, const RVec& b) {
    Rat s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += Rat(a[i]) * b[i];
    return s;
}

double dot(const IVec& a, const std::vector<double>& b) {
    double s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += static_cast<double>(a[i]) * b[i];
    return s;
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

std::optional<RVec> solve_rational(RMat a, RVec b) {
    const int n = static_cast<int>(a.size());
    for (int col = 0; col < n; ++col) {
        int pivot = -1;
        for (int row = col; row < n; ++row) {
            if (a[row][col] != 0) { pivot = row; break; }
        }
        if (pivot < 0) return std::nullopt;
        std::swap(a[col], a[pivot]);
        std::swap(b[col], b[pivot]);
        for (int row = 0; row < n; ++row) {
            if (row == col || a[row][col] == 0) continue;
            Rat f = a[row][col] / a[col][col];
            for (int k = col; k < n; ++k) a[row][k] -= f * a[col][k];
            b[row] -= f * b[col];
        }
    }
    RVec x(n);
    for (int i = 0; i < n; ++i) x[i] = b[i] / a[i][i];
    return x;
}

int rank_rational(RMat a) {
    if (a.empty()) return 0;
    const int rows = static_cast<int>(a.size());
    const int cols = static_cast<int>(a[0].size());
    int rank = 0;
    for (int col = 0; col < cols && rank < rows; ++col) {
        int pivot = -1;
        for (int row = rank; row < rows; ++row) {
            if (a[row][col] != 0) { pivot = row; break; }
        }
        if (pivot < 0) continue;
        std::swap(a[rank], a[pivot]);
        for (int row = rank + 1; row < rows; ++row) {
            if (a[row][col] == 0) continue;
            Rat f = a[row][col] / a[rank][col];
            for (int k = col; k < cols; ++k) a[row][k] -= f * a[rank][k];
        }
        ++rank;
    }
    return rank;
}

int rank_integer(const IMat& a) {
    RMat r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i].assign(a[i].begin(), a[i].end());
    return rank_rational(std::move(r));
}

Rat det_rational(RMat a) {
    const int n = static_cast<int>(a.size());
    Rat det = 1;
    for (int col = 0; col < n; ++col) {
        int pivot = -1;
        for (int row = col; row < n; ++row) {
            if (a[row][col] != 0) { pivot = row; break; }
        }
        if (pivot < 0) return 0;
        if (pivot != col) { std::swap(a[col], a[pivot]); det = -det; }
        det *= a[col][col];
        for (int row = col + 1; row < n; ++row) {
            if (a[row][col] == 0) continue;
            Rat f = a[row][col] / a[col][col];
            for (int k = col; k < n; ++k) a[row][k] -= f * a[col][k];
        }
    }
    return det;
}

Int det_integer(const IMat& a) {
    RMat r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i].assign(a[i].begin(), a[i].end());
    Rat d = det_rational(std::move(r));
    if (denominator(d) != 1) throw InternalError("integer determinant is not integral");
    return numerator(d).convert_to<Int>();
}

int affine_rank(const std::vector<RVec>& points) {
    if (points.empty()) return -1;
    RMat diffs;
    for (std::size_t i = 1; i < points.size(); ++i) {
        RVec row(points[i].size());
        for (std::size_t k = 0; k < row.size(); ++k) row[k] = points[i][k] - points[0][k];
        diffs.push_back(std::move(row));
    }
    return diffs.empty() ? 0 : rank_rational(std::move(diffs));
}

IVec primitive_vector(IVec v) {
    Int g = 0;
    for (Int x : v) g = std::gcd(g, x);
    if (g == 0) throw InvalidInput("primitive_vector: zero vector");
    for (Int& x : v) x /= g;
    return v;
}

namespace {

IVec rational_to_primitive(const RVec& v) {
    BigInt lcm = 1;
    for (const Rat& x : v) {
        BigInt den(denominator(x).str());
        lcm = boost::multiprecision::lcm(lcm, den);
    }
    std::vector<BigInt> scaled(v.size());
    BigInt g = 0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        scaled[i] = BigInt(numerator(v[i]).str()) * (lcm / BigInt(denominator(v[i]).str()));
        g = boost::multiprecision::gcd(g, scaled[i]);
    }
    if (g == 0) throw InvalidInput("cannot normalize the zero vector");
    IVec out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = (scaled[i] / g).convert_to<Int>();
    return out;
}

}  // namespace

IVec kernel_direction(const IMat& rows, int n) {
    RMat a(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) a[i].assign(rows[i].begin(), rows[i].end());
    // Reduce to echelon form and read off the single free direction.
    const int m = static_cast<int>(a.size());
    std::vector<int> pivot_col;
    int rank = 0;
    for (int col = 0; col < n && rank < m; ++col) {
        int pivot = -1;
        for (int row = rank; row < m; ++row) {
            if (a[row][col] != 0) { pivot = row; break; }
        }
        if (pivot < 0) continue;
        std::swap(a[rank], a[pivot]);
        for (int row = 0; row < m; ++row) {
            if (row == rank || a[row][col] == 0) continue;
            Rat f = a[row][col] / a[rank][col];
            for (int k = 0; k < n; ++k) a[row][k] -= f * a[rank][k];
        }
        pivot_col.push_back(col);
        ++rank;
    }
    if (rank != n - 1) throw InternalError("kernel_direction: rank is not n-1");
    std::vector<bool> is_pivot(n, false);
    for (int c : pivot_col) is_pivot[c] = true;
    int free_col = 0;
    while (is_pivot[free_col]) ++free_col;
    RVec dir(n, Rat(0));
    dir[free_col] = 1;
    for (int r = 0; r < rank; ++r) dir[pivot_col[r]] = -a[r][free_col] / a[r][pivot_col[r]];
    return rational_to_primitive(dir);
}

IMat inverse_unimodular(const IMat& c) {
    const int n = static_cast<int>(c.size());
    Int d = det_integer(c);
    if (d != 1 && d != -1) throw InvalidInput("matrix is not unimodular");
    RMat a(n, RVec(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) a[i][j] = c[i][j];
    IMat inv(n, IVec(n));
    for (int col = 0; col < n; ++col) {
        RVec e(n, Rat(0));
        e[col] = 1;
        auto x = solve_rational(a, e);
        if (!x) throw InternalError("unimodular matrix failed to invert");
        for (int row = 0; row < n; ++row) {
            if (denominator((*x)[row]) != 1) throw InternalError("non-integer inverse entry");
            inv[row][col] = numerator((*x)[row]).convert_to<Int>();
        }
    }
    return inv;
}

IVec mat_vec(const IMat& a, const IVec& x) {
    IVec out(a.size(), 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < x.size(); ++j) out[i] += a[i][j] * x[j];
    return out;
}

std::vector<double> mat_vec(const IMat& a, const std::vector<double>& x) {
    std::vector<double> out(a.size(), 0.0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < x.size(); ++j) out[i] += static_cast<double>(a[i][j]) * x[j];
    return out;
}

namespace {

using BMat = std::vector<std::vector<BigInt>>;

BMat to_big(const IMat& a) {
    BMat w(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) w[i].assign(a[i].begin(), a[i].end());
    return w;
}

Int to_int_checked(const BigInt& x) {
    if (x > std::numeric_limits<Int>::max() || x < std::numeric_limits<Int>::min())
        throw InternalError("normal-form entry overflows 64-bit storage");
    return x.convert_to<Int>();
}

BigInt floor_div(const BigInt& a, const BigInt& b) {
    BigInt q = a / b, r = a % b;
    if (r != 0 && ((r < 0) != (b < 0))) --q;
    return q;
}

}  // namespace

HermiteResult hermite_columns(const IMat& a) {
    const int n = static_cast<int>(a.size());
    const int d = n > 0 ? static_cast<int>(a[0].size()) : 0;
    BMat w = to_big(a);
    BMat u(d, std::vector<BigInt>(d, 0));
    for (int i = 0; i < d; ++i) u[i][i] = 1;

    auto add_col = [&](int dst, int src, const BigInt& f) {
        for (int i = 0; i < n; ++i) w[i][dst] += f * w[i][src];
        for (int i = 0; i < d; ++i) u[i][dst] += f * u[i][src];
    };
    auto swap_col = [&](int x, int y) {
        if (x == y) return;
        for (int i = 0; i < n; ++i) std::swap(w[i][x], w[i][y]);
        for (int i = 0; i < d; ++i) std::swap(u[i][x], u[i][y]);
    };
    auto negate_col = [&](int x) {
        for (int i = 0; i < n; ++i) w[i][x] = -w[i][x];
        for (int i = 0; i < d; ++i) u[i][x] = -u[i][x];
    };

    HermiteResult res;
    int r = 0;
    for (int row = 0; row < n && r < d; ++row) {
        // Euclidean reduction across columns r..d-1 on this row.
        while (true) {
            int best = -1;
            for (int col = r; col < d; ++col) {
                if (w[row][col] == 0) continue;
                if (best < 0 || abs(w[row][col]) < abs(w[row][best])) best = col;
            }
            if (best < 0) break;
            swap_col(r, best);
            bool clean = true;
            for (int col = r + 1; col < d; ++col) {
                if (w[row][col] == 0) continue;
                BigInt q = w[row][col] / w[row][r];
                add_col(col, r, -q);
                if (w[row][col] != 0) clean = false;
            }
            if (clean) break;
        }
        if (w[row][r] == 0) continue;  // no pivot in this row
        if (w[row][r] < 0) negate_col(r);
        // Reduce entries to the left of the pivot into [0, pivot).
        for (int col = 0; col < r; ++col) {
            BigInt q = floor_div(w[row][col], w[row][r]);
            if (q != 0) add_col(col, r, -q);
        }
        res.pivots.emplace_back(row, r);
        ++r;
    }
    res.rank = r;
    res.h.assign(n, IVec(d, 0));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < d; ++j) res.h[i][j] = to_int_checked(w[i][j]);
    res.u.assign(d, IVec(d, 0));
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) res.u[i][j] = to_int_checked(u[i][j]);
    return res;
}

IMat integer_kernel_basis(const IMat& a) {
    HermiteResult res = hermite_columns(a);
    const int d = res.u.empty() ? 0 : static_cast<int>(res.u.size());
    IMat basis;
    for (int col = res.rank; col < d; ++col) {
        IVec v(d);
        for (int i = 0; i < d; ++i) v[i] = res.u[i][col];
        basis.push_back(std::move(v));
    }
    return basis;
}

IVec smith_invariants(IMat a) {
    BMat w = to_big(a);
    const int n = static_cast<int>(w.size());
    const int d = n > 0 ? static_cast<int>(w[0].size()) : 0;
    IVec invariants;
    int s = 0;
    while (s < n && s < d) {
        // locate a nonzero entry in the lower-right block
        int pr = -1, pc = -1;
        for (int i = s; i < n; ++i)
            for (int j = s; j < d; ++j)
                if (w[i][j] != 0 && (pr < 0 || abs(w[i][j]) < abs(w[pr][pc]))) { pr = i; pc = j; }
        if (pr < 0) break;
        std::swap(w[s], w[pr]);
        for (int i = 0; i < n; ++i) std::swap(w[i][s], w[i][pc]);
        bool again = false;
        for (int i = s + 1; i < n; ++i) {
            if (w[i][s] == 0) continue;
            BigInt q = w[i][s] / w[s][s];
            for (int j = s; j < d; ++j) w[i][j] -= q * w[s][j];
            if (w[i][s] != 0) again = true;
        }
        for (int j = s + 1; j < d; ++j) {
            if (w[s][j] == 0) continue;
            BigInt q = w[s][j] / w[s][s];
            for (int i = s; i < n; ++i) w[i][j] -= q * w[i][s];
            if (w[s][j] != 0) again = true;
        }
        if (again) continue;
        // pivot must divide the rest of the block
        bool divides = true;
        for (int i = s + 1; i < n && divides; ++i)
            for (int j = s + 1; j < d && divides; ++j)
                if (w[i][j] % w[s][s] != 0) {
                    for (int k = s; k < d; ++k) w[s][k] += w[i][k];
                    divides = false;
                }
        if (!divides) continue;
        if (w[s][s] < 0) w[s][s] = -w[s][s];
        invariants.push_back(to_int_checked(w[s][s]));
        ++s;
    }
    return invariants;
}

std::optional<IVec> solve_integer(const IMat& a, const IVec& b) {
    HermiteResult res = hermite_columns(a);
    const int n = static_cast<int>(a.size());
    const int d = n > 0 ? static_cast<int>(a[0].size()) : 0;
    IVec y(d, 0);
    std::vector<bool> row_used(n, false);
    BMat h = to_big(res.h);
    std::vector<BigInt> rhs(b.begin(), b.end());
    for (auto [row, col] : res.pivots) {
        BigInt acc = rhs[row];
        for (int c = 0; c < col; ++c) acc -= h[row][c] * y[c];
        if (acc % h[row][col] != 0) return std::nullopt;
        y[col] = to_int_checked(acc / h[row][col]);
        row_used[row] = true;
    }
    // rows without pivots must be consistent
    for (int row = 0; row < n; ++row) {
        if (row_used[row]) continue;
        BigInt acc = rhs[row];
        for (int c = 0; c < d; ++c) acc -= h[row][c] * y[c];
        if (acc != 0) return std::nullopt;
    }
    return mat_vec(res.u, y);
}

}  // namespace vortex
