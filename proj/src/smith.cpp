#include "forestcalc/smith.hpp"

#include "forestcalc/error.hpp"

#include <algorithm>
#include <set>

namespace forestcalc {

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<long>> init)
{
    rows_ = init.size();
    cols_ = rows_ ? init.begin()->size() : 0;
    data_.reserve(rows_ * cols_);
    for (const auto& row : init) {
        if (row.size() != cols_)
            throw ValidationError("ragged matrix literal");
        for (long x : row)
            data_.emplace_back(x);
    }
}

IntMatrix IntMatrix::identity(std::size_t n)
{
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        m(i, i) = 1;
    return m;
}

bool IntMatrix::is_zero() const
{
    return std::all_of(data_.begin(), data_.end(), [](const Integer& x) { return x == 0; });
}

IntMatrix IntMatrix::transpose() const
{
    IntMatrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c)
            t(c, r) = (*this)(r, c);
    return t;
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b)
{
    if (a.cols() != b.rows())
        throw PreconditionError("matrix product: inner dimensions differ");
    IntMatrix out(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            if (a(i, k) == 0)
                continue;
            for (std::size_t j = 0; j < b.cols(); ++j)
                out(i, j) += a(i, k) * b(k, j);
        }
    return out;
}

namespace {

// Row operations are mirrored into u, column operations into v, so that
// u·m·v stays equal to the working matrix.
struct DenseReducer {
    IntMatrix& a;
    IntMatrix* u;
    IntMatrix* v;

    void swap_rows(std::size_t i, std::size_t j)
    {
        if (i == j)
            return;
        for (std::size_t c = 0; c < a.cols(); ++c)
            std::swap(a(i, c), a(j, c));
        if (u)
            for (std::size_t c = 0; c < u->cols(); ++c)
                std::swap((*u)(i, c), (*u)(j, c));
    }

    void swap_cols(std::size_t i, std::size_t j)
    {
        if (i == j)
            return;
        for (std::size_t r = 0; r < a.rows(); ++r)
            std::swap(a(r, i), a(r, j));
        if (v)
            for (std::size_t r = 0; r < v->rows(); ++r)
                std::swap((*v)(r, i), (*v)(r, j));
    }

    // row dst -= q * row src
    void sub_row(std::size_t dst, std::size_t src, const Integer& q)
    {
        for (std::size_t c = 0; c < a.cols(); ++c)
            if (a(src, c) != 0)
                a(dst, c) -= q * a(src, c);
        if (u)
            for (std::size_t c = 0; c < u->cols(); ++c)
                if ((*u)(src, c) != 0)
                    (*u)(dst, c) -= q * (*u)(src, c);
    }

    // col dst -= q * col src
    void sub_col(std::size_t dst, std::size_t src, const Integer& q)
    {
        for (std::size_t r = 0; r < a.rows(); ++r)
            if (a(r, src) != 0)
                a(r, dst) -= q * a(r, src);
        if (v)
            for (std::size_t r = 0; r < v->rows(); ++r)
                if ((*v)(r, src) != 0)
                    (*v)(r, dst) -= q * (*v)(r, src);
    }

    void negate_row(std::size_t i)
    {
        for (std::size_t c = 0; c < a.cols(); ++c)
            a(i, c) = -a(i, c);
        if (u)
            for (std::size_t c = 0; c < u->cols(); ++c)
                (*u)(i, c) = -(*u)(i, c);
    }

    std::size_t run()
    {
        const std::size_t m = a.rows(), n = a.cols();
        std::size_t t = 0;
        for (; t < std::min(m, n); ++t) {
            // least absolute value in the trailing block
            std::size_t bi = m, bj = n;
            Integer best;
            for (std::size_t i = t; i < m; ++i)
                for (std::size_t j = t; j < n; ++j)
                    if (a(i, j) != 0 && (bi == m || abs(a(i, j)) < best)) {
                        best = abs(a(i, j));
                        bi = i;
                        bj = j;
                    }
            if (bi == m)
                break;
            swap_rows(t, bi);
            swap_cols(t, bj);

            for (;;) {
                bool dirty = false;
                for (std::size_t i = t + 1; i < m; ++i)
                    if (a(i, t) != 0) {
                        Integer q = a(i, t) / a(t, t);
                        if (q != 0)
                            sub_row(i, t, q);
                        dirty = dirty || a(i, t) != 0;
                    }
                for (std::size_t j = t + 1; j < n; ++j)
                    if (a(t, j) != 0) {
                        Integer q = a(t, j) / a(t, t);
                        if (q != 0)
                            sub_col(j, t, q);
                        dirty = dirty || a(t, j) != 0;
                    }
                if (dirty) {
                    // a remainder is smaller than the pivot; move the smallest in
                    std::size_t si = t, sj = t;
                    Integer small = abs(a(t, t));
                    for (std::size_t i = t + 1; i < m; ++i)
                        if (a(i, t) != 0 && abs(a(i, t)) < small) {
                            small = abs(a(i, t));
                            si = i;
                            sj = t;
                        }
                    for (std::size_t j = t + 1; j < n; ++j)
                        if (a(t, j) != 0 && abs(a(t, j)) < small) {
                            small = abs(a(t, j));
                            si = t;
                            sj = j;
                        }
                    swap_rows(t, si);
                    swap_cols(t, sj);
                    continue;
                }
                std::size_t bad = m;
                for (std::size_t i = t + 1; i < m && bad == m; ++i)
                    for (std::size_t j = t + 1; j < n; ++j)
                        if (a(i, j) % a(t, t) != 0) {
                            bad = i;
                            break;
                        }
                if (bad == m)
                    break;
                sub_row(t, bad, Integer(-1));
            }
            if (a(t, t) < 0)
                negate_row(t);
        }
        return t;
    }
};

} // namespace

SmithForm smith_normal_form(const IntMatrix& m)
{
    SmithForm out{m, IntMatrix::identity(m.rows()), IntMatrix::identity(m.cols()), {}};
    DenseReducer red{out.d, &out.u, &out.v};
    std::size_t rank = red.run();
    for (std::size_t t = 0; t < rank; ++t)
        out.diagonal.push_back(out.d(t, t));
    return out;
}

std::vector<Integer> invariant_factors(IntMatrix m)
{
    DenseReducer red{m, nullptr, nullptr};
    std::size_t rank = red.run();
    std::vector<Integer> out;
    for (std::size_t t = 0; t < rank; ++t)
        out.push_back(m(t, t));
    return out;
}

Integer determinant(IntMatrix a)
{
    const std::size_t n = a.rows();
    if (a.cols() != n)
        throw PreconditionError("determinant of a non-square matrix");
    if (n == 0)
        return 1;
    int sign = 1;
    Integer prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (a(k, k) == 0) {
            std::size_t i = k + 1;
            while (i < n && a(i, k) == 0)
                ++i;
            if (i == n)
                return 0;
            for (std::size_t c = 0; c < n; ++c)
                std::swap(a(k, c), a(i, c));
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j)
                a(i, j) = (a(i, j) * a(k, k) - a(i, k) * a(k, j)) / prev;
        prev = a(k, k);
    }
    return sign * a(n - 1, n - 1);
}

IntMatrix kernel_basis(const IntMatrix& m)
{
    SmithForm s = smith_normal_form(m);
    const std::size_t rank = s.diagonal.size();
    IntMatrix k(m.cols(), m.cols() - rank);
    for (std::size_t r = 0; r < m.cols(); ++r)
        for (std::size_t c = rank; c < m.cols(); ++c)
            k(r, c - rank) = s.v(r, c);
    return k;
}

std::optional<std::vector<Integer>> solve_integral(const IntMatrix& a, const std::vector<Integer>& b)
{
    const std::size_t m = a.rows(), n = a.cols();
    if (b.size() != m)
        throw PreconditionError("solve_integral: right-hand side has the wrong length");
    std::vector<std::vector<Rational>> aug(m, std::vector<Rational>(n + 1));
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < n; ++j)
            aug[i][j] = Rational(a(i, j));
        aug[i][n] = Rational(b[i]);
    }
    std::size_t row = 0;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t p = row;
        while (p < m && aug[p][col] == 0)
            ++p;
        if (p == m)
            throw PreconditionError("solve_integral: matrix does not have full column rank");
        std::swap(aug[row], aug[p]);
        for (std::size_t i = 0; i < m; ++i) {
            if (i == row || aug[i][col] == 0)
                continue;
            Rational f = aug[i][col] / aug[row][col];
            for (std::size_t j = col; j <= n; ++j)
                aug[i][j] -= f * aug[row][j];
        }
        ++row;
    }
    for (std::size_t i = n; i < m; ++i)
        if (aug[i][n] != 0)
            return std::nullopt;
    std::vector<Integer> x(n);
    for (std::size_t i = 0; i < n; ++i) {
        Rational v = aug[i][n] / aug[i][i];
        if (denominator(v) != 1)
            return std::nullopt;
        x[i] = numerator(v);
    }
    return x;
}

// ------------------------------------------------------------------ sparse

bool is_prime(std::uint32_t p)
{
    if (p < 2)
        return false;
    for (std::uint64_t d = 2; d * d <= p; ++d)
        if (p % d == 0)
            return false;
    return true;
}

Coefficients Coefficients::prime_field(std::uint32_t p)
{
    if (!is_prime(p))
        throw ValidationError("coefficient field F_" + std::to_string(p) + ": " + std::to_string(p) + " is not prime");
    return {Kind::prime_field, p};
}

std::string Coefficients::name() const
{
    switch (kind) {
    case Kind::integers:
        return "Z";
    case Kind::rationals:
        return "Q";
    case Kind::prime_field:
        return "F_" + std::to_string(prime);
    }
    return "?";
}

IntMatrix SparseIntMatrix::to_dense() const
{
    IntMatrix d(rows, cols);
    for (std::size_t c = 0; c < columns.size(); ++c)
        for (auto [r, v] : columns[c])
            d(static_cast<std::size_t>(r), c) += v;
    return d;
}

namespace {

struct IntegerOps {
    using T = Integer;
    static bool zero(const T& x) { return x == 0; }
    static bool unit(const T& x) { return x == 1 || x == -1; }
    static T inv(const T& x) { return x; }
    static T mul(const T& a, const T& b) { return a * b; }
    static T sub(const T& a, const T& b) { return a - b; }
    static T neg(const T& a) { return -a; }
    T from(long x) const { return T(x); }
};

struct RationalOps {
    using T = Rational;
    static bool zero(const T& x) { return x == 0; }
    static bool unit(const T& x) { return x != 0; }
    static T inv(const T& x) { return 1 / x; }
    static T mul(const T& a, const T& b) { return a * b; }
    static T sub(const T& a, const T& b) { return a - b; }
    static T neg(const T& a) { return -a; }
    T from(long x) const { return T(x); }
};

struct PrimeOps {
    using T = std::uint64_t;
    std::uint64_t p;
    static bool zero(T x) { return x == 0; }
    static bool unit(T x) { return x != 0; }
    T inv(T x) const
    {
        T result = 1, base = x, e = p - 2;
        while (e) {
            if (e & 1)
                result = result * base % p;
            base = base * base % p;
            e >>= 1;
        }
        return result;
    }
    T mul(T a, T b) const { return a * b % p; }
    T sub(T a, T b) const { return (a + p - b) % p; }
    T neg(T a) const { return (p - a) % p; }
    T from(long x) const
    {
        long r = x % static_cast<long>(p);
        return static_cast<T>(r < 0 ? r + static_cast<long>(p) : r);
    }
};

template <typename Ops>
class SparseEliminator {
public:
    using T = typename Ops::T;
    using Row = std::vector<std::pair<int, T>>;

    SparseEliminator(const SparseIntMatrix& m, Ops ops) : ops_(ops), rows_(m.rows), cols_(m.cols), stuck_(m.cols, false), key_(m.cols, 0)
    {
        std::vector<std::vector<std::pair<int, long>>> by_row(m.rows);
        for (std::size_t c = 0; c < m.columns.size(); ++c)
            for (auto [r, v] : m.columns[c])
                by_row[static_cast<std::size_t>(r)].emplace_back(static_cast<int>(c), v);
        for (std::size_t r = 0; r < m.rows; ++r) {
            auto& src = by_row[r];
            std::sort(src.begin(), src.end());
            for (std::size_t k = 0; k < src.size();) {
                long sum = 0;
                int c = src[k].first;
                for (; k < src.size() && src[k].first == c; ++k)
                    sum += src[k].second;
                T v = ops_.from(sum);
                if (!Ops::zero(v)) {
                    rows_[r].emplace_back(c, std::move(v));
                    cols_[static_cast<std::size_t>(c)].push_back(static_cast<int>(r));
                }
            }
        }
        for (std::size_t c = 0; c < m.cols; ++c)
            requeue(static_cast<int>(c));
    }

    std::size_t eliminate()
    {
        std::size_t pivots = 0;
        while (!queue_.empty()) {
            auto [count, c] = *queue_.begin();
            queue_.erase(queue_.begin());
            key_[static_cast<std::size_t>(c)] = 0;

            int best = -1;
            const T* pivot = nullptr;
            for (int i : cols_[static_cast<std::size_t>(c)]) {
                const T* v = entry(i, c);
                if (Ops::unit(*v) && (best < 0 || rows_[static_cast<std::size_t>(i)].size() < rows_[static_cast<std::size_t>(best)].size())) {
                    best = i;
                    pivot = v;
                }
            }
            if (best < 0) {
                stuck_[static_cast<std::size_t>(c)] = true;
                continue;
            }
            pivot_on(best, c, ops_.inv(*pivot));
            ++pivots;
        }
        return pivots;
    }

    /// Nonzero entries left after elimination, as a compact dense matrix.
    IntMatrix remainder() const
    {
        std::vector<int> live_rows, col_index(cols_.size(), -1);
        int ncols = 0;
        for (std::size_t r = 0; r < rows_.size(); ++r)
            if (!rows_[r].empty()) {
                live_rows.push_back(static_cast<int>(r));
                for (const auto& [c, v] : rows_[r])
                    if (col_index[static_cast<std::size_t>(c)] < 0)
                        col_index[static_cast<std::size_t>(c)] = ncols++;
            }
        IntMatrix d(live_rows.size(), static_cast<std::size_t>(ncols));
        if constexpr (std::is_same_v<T, Integer>) {
            for (std::size_t i = 0; i < live_rows.size(); ++i)
                for (const auto& [c, v] : rows_[static_cast<std::size_t>(live_rows[i])])
                    d(i, static_cast<std::size_t>(col_index[static_cast<std::size_t>(c)])) = v;
        } else if (!live_rows.empty()) {
            throw Error("field elimination left nonzero entries");
        }
        return d;
    }

private:
    const T* entry(int r, int c) const
    {
        const Row& row = rows_[static_cast<std::size_t>(r)];
        auto it = std::lower_bound(row.begin(), row.end(), c, [](const auto& e, int col) { return e.first < col; });
        return (it != row.end() && it->first == c) ? &it->second : nullptr;
    }

    void drop(std::vector<int>& list, int value)
    {
        auto it = std::find(list.begin(), list.end(), value);
        *it = list.back();
        list.pop_back();
    }

    void requeue(int c)
    {
        auto& key = key_[static_cast<std::size_t>(c)];
        if (key)
            queue_.erase({key, c});
        stuck_[static_cast<std::size_t>(c)] = false;
        key = cols_[static_cast<std::size_t>(c)].size();
        if (key)
            queue_.insert({key, c});
    }

    void pivot_on(int r, int c, const T& inv)
    {
        const Row pivot_row = rows_[static_cast<std::size_t>(r)];
        std::vector<int> others;
        for (int i : cols_[static_cast<std::size_t>(c)])
            if (i != r)
                others.push_back(i);

        for (int i : others) {
            Row& row = rows_[static_cast<std::size_t>(i)];
            const T factor = ops_.mul(*entry(i, c), inv);
            Row merged;
            merged.reserve(row.size() + pivot_row.size());
            std::size_t a = 0, b = 0;
            while (a < row.size() || b < pivot_row.size()) {
                if (b == pivot_row.size() || (a < row.size() && row[a].first < pivot_row[b].first)) {
                    merged.push_back(std::move(row[a++]));
                    continue;
                }
                const int col = pivot_row[b].first;
                T value = ops_.mul(factor, pivot_row[b].second);
                bool had = a < row.size() && row[a].first == col;
                value = had ? ops_.sub(row[a++].second, value) : ops_.neg(value);
                ++b;
                if (!Ops::zero(value))
                    merged.emplace_back(col, std::move(value));
                bool has = !merged.empty() && merged.back().first == col;
                if (had && !has)
                    drop(cols_[static_cast<std::size_t>(col)], i);
                else if (!had && has)
                    cols_[static_cast<std::size_t>(col)].push_back(i);
            }
            row = std::move(merged);
        }
        for (const auto& [col, v] : pivot_row) {
            drop(cols_[static_cast<std::size_t>(col)], r);
            if (col != c)
                requeue(col);
        }
        rows_[static_cast<std::size_t>(r)].clear();
    }

    Ops ops_;
    std::vector<Row> rows_;
    std::vector<std::vector<int>> cols_;
    std::vector<bool> stuck_;
    std::vector<std::size_t> key_;
    std::set<std::pair<std::size_t, int>> queue_;
};

template <typename Ops>
Diagonalization run_elimination(const SparseIntMatrix& m, Ops ops)
{
    SparseEliminator<Ops> elim(m, ops);
    Diagonalization out;
    out.unit_pivots = elim.eliminate();
    IntMatrix rest = elim.remainder();
    out.dense_rows = rest.rows();
    out.dense_cols = rest.cols();
    out.rank = out.unit_pivots;
    if (rest.rows() && rest.cols()) {
        for (auto& f : invariant_factors(std::move(rest))) {
            ++out.rank;
            if (f > 1)
                out.torsion.push_back(f);
        }
    }
    return out;
}

} // namespace

Diagonalization diagonalize(const SparseIntMatrix& m, const Coefficients& coeff)
{
    switch (coeff.kind) {
    case Coefficients::Kind::integers:
        return run_elimination(m, IntegerOps{});
    case Coefficients::Kind::rationals:
        return run_elimination(m, RationalOps{});
    case Coefficients::Kind::prime_field:
        return run_elimination(m, PrimeOps{coeff.prime});
    }
    throw Error("unknown coefficient kind");
}

} // namespace forestcalc
