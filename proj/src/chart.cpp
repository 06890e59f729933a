#include "ostro/chart.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "ostro/errors.hpp"
#include "ostro/fd.hpp"

namespace ostro {

namespace {

double factorial(int n) {
    double f = 1.0;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

/// Memoizes symmetric partial-derivative lookups of one transition at one
/// base point for the duration of a transform call.
class PartialCache {
public:
    PartialCache(const ChartTransition& T, Vec x) : T_(T), x_(std::move(x)) {}

    const Vec& get(std::vector<int> idx) {
        std::sort(idx.begin(), idx.end());
        auto it = cache_.find(idx);
        if (it != cache_.end()) return it->second;
        Vec v = T_.partial(x_, idx);
        return cache_.emplace(std::move(idx), std::move(v)).first->second;
    }

    /// Contract the derivative tensor of order |vs| with the given vectors:
    /// out^i = sum_j1..js  d^s T^i/dx^j1..dx^js  v1^j1 ... vs^js.
    Vec contract(const std::vector<const Vec*>& vs) {
        const int m = T_.dim;
        const int s = static_cast<int>(vs.size());
        Vec out(m, 0.0);
        std::vector<int> idx(s, 0);
        while (true) {
            double w = 1.0;
            for (int r = 0; r < s; ++r) w *= (*vs[r])[idx[r]];
            if (w != 0.0) {
                const Vec& d = get(idx);
                for (int i = 0; i < m; ++i) out[i] += w * d[i];
            }
            int r = s - 1;
            while (r >= 0 && ++idx[r] == m) idx[r--] = 0;
            if (r < 0) break;
        }
        return out;
    }

    /// Same but leaving one slot free; returns the matrix out^i_j.
    Mat contract_free(const std::vector<const Vec*>& vs) {
        const int m = T_.dim;
        const int s = static_cast<int>(vs.size());
        Mat out(m, m);
        std::vector<int> idx(s + 1, 0);
        while (true) {
            double w = 1.0;
            for (int r = 0; r < s; ++r) w *= (*vs[r])[idx[r]];
            if (w != 0.0) {
                const Vec& d = get(idx);
                for (int i = 0; i < m; ++i) out(i, idx[s]) += w * d[i];
            }
            int r = s;
            while (r >= 0 && ++idx[r] == m) idx[r--] = 0;
            if (r < 0) break;
        }
        return out;
    }

private:
    const ChartTransition& T_;
    Vec x_;
    std::map<std::vector<int>, Vec> cache_;
};

void for_each_composition(int total, const std::function<void(std::span<const int>)>& fn) {
    // ordered compositions of `total` into positive parts
    std::vector<int> parts;
    std::function<void(int)> rec = [&](int rem) {
        if (rem == 0) {
            fn(parts);
            return;
        }
        for (int p = 1; p <= rem; ++p) {
            parts.push_back(p);
            rec(rem - p);
            parts.pop_back();
        }
    };
    rec(total);
}

void for_each_set_partition(int n, const std::function<void(const std::vector<std::vector<int>>&)>& fn) {
    // restricted-growth strings
    std::vector<int> label(n, 0);
    std::function<void(int, int)> rec = [&](int i, int maxl) {
        if (i == n) {
            std::vector<std::vector<int>> blocks(maxl);
            for (int j = 0; j < n; ++j) blocks[label[j]].push_back(j);
            fn(blocks);
            return;
        }
        for (int l = 0; l <= maxl; ++l) {
            label[i] = l;
            rec(i + 1, std::max(maxl, l + 1));
        }
    };
    if (n == 0) return;
    rec(0, 0);
}

/// Primed jet levels 1..top computed from the composition sum
/// y'^(a) = sum_s (1/s!) sum_{b1+..+bs=a} D^s T[y^(b1),...,y^(bs)].
std::vector<Vec> primed_levels(PartialCache& cache, const std::vector<const Vec*>& levels, int top) {
    std::vector<Vec> out;
    out.reserve(top);
    for (int a = 1; a <= top; ++a) {
        Vec acc(levels[0]->size(), 0.0);
        for_each_composition(a, [&](std::span<const int> parts) {
            std::vector<const Vec*> vs;
            vs.reserve(parts.size());
            for (int b : parts) vs.push_back(levels[b]);
            Vec c = cache.contract(vs);
            const double w = 1.0 / factorial(static_cast<int>(parts.size()));
            for (size_t i = 0; i < acc.size(); ++i) acc[i] += w * c[i];
        });
        out.push_back(std::move(acc));
    }
    return out;
}

std::vector<const Vec*> level_ptrs(const JetPoint& pt) {
    std::vector<const Vec*> ls{&pt.x};
    for (const Vec& v : pt.y) ls.push_back(&v);
    return ls;
}

} // namespace

Vec ChartTransition::partial(const Vec& x, std::span<const int> idx) const {
    if (idx.empty()) return forward(x);
    if (partials) return partials(x, idx);
    return fd::partial_multi(forward, x, idx);
}

Mat ChartTransition::jacobian(const Vec& x) const {
    Mat J(dim, dim);
    for (int j = 0; j < dim; ++j) {
        int idx[1] = {j};
        Vec col = partial(x, idx);
        for (int i = 0; i < dim; ++i) J(i, j) = col[i];
    }
    if (std::abs(determinant(J)) < 1e-14)
        throw TransitionError("singular Jacobian in chart transition");
    return J;
}

ChartTransition ChartTransition::inverted() const {
    ChartTransition R;
    R.dim = dim;
    R.forward = inverse;
    R.inverse = forward;
    return R;
}

ChartTransition ChartTransition::identity(int m) {
    ChartTransition T;
    T.dim = m;
    T.forward = [](const Vec& x) { return x; };
    T.inverse = [](const Vec& x) { return x; };
    T.partials = [m](const Vec&, std::span<const int> idx) {
        Vec v(m, 0.0);
        if (idx.size() == 1) v[idx[0]] = 1.0; // identity has unit first derivatives only
        return v;
    };
    return T;
}

ChartTransition ChartTransition::linear(const Mat& A) {
    ChartTransition T;
    T.dim = A.rows;
    Mat Ainv = inverse(A);
    T.forward = [A](const Vec& x) { return matvec(A, x); };
    T.inverse = [Ainv](const Vec& x) { return matvec(Ainv, x); };
    T.partials = [A](const Vec&, std::span<const int> idx) {
        Vec v(A.rows, 0.0);
        if (idx.size() == 1)
            for (int i = 0; i < A.rows; ++i) v[i] = A(i, idx[0]);
        return v;
    };
    return T;
}

ChartTransition compose(const ChartTransition& outer, const ChartTransition& inner) {
    if (outer.dim != inner.dim) throw ArgumentError("compose: dimension mismatch");
    ChartTransition C;
    C.dim = outer.dim;
    auto of = outer.forward, iv = inner.forward;
    C.forward = [of, iv](const Vec& x) { return of(iv(x)); };
    auto oi = outer.inverse, ii = inner.inverse;
    C.inverse = [oi, ii](const Vec& x) { return ii(oi(x)); };
    if (outer.partials && inner.partials) {
        ChartTransition o = outer, in = inner;
        C.partials = [o, in](const Vec& x, std::span<const int> idx) {
            // Faa di Bruno over set partitions of the index positions
            const int s = static_cast<int>(idx.size());
            PartialCache ocache(o, in.forward(x));
            Vec acc(o.dim, 0.0);
            for_each_set_partition(s, [&](const std::vector<std::vector<int>>& blocks) {
                std::vector<Vec> ws;
                ws.reserve(blocks.size());
                for (const auto& B : blocks) {
                    std::vector<int> sub;
                    for (int pos : B) sub.push_back(idx[pos]);
                    ws.push_back(in.partial(x, sub));
                }
                std::vector<const Vec*> vs;
                for (const Vec& w : ws) vs.push_back(&w);
                Vec c = ocache.contract(vs);
                for (int i = 0; i < o.dim; ++i) acc[i] += c[i];
            });
            return acc;
        };
    }
    return C;
}

JetPoint transform_jet(const ChartTransition& T, const JetPoint& pt) {
    if (T.dim != pt.dim) throw ArgumentError("transform_jet: dimension mismatch");
    T.jacobian(pt.x); // singularity check
    PartialCache cache(T, pt.x);
    std::vector<Vec> primed = primed_levels(cache, level_ptrs(pt), pt.order - 1);
    return JetPoint(pt.order, T.forward(pt.x), std::move(primed));
}

ExtendedJetPoint transform_jet(const ChartTransition& T, const ExtendedJetPoint& pt) {
    if (T.dim != pt.jet.dim) throw ArgumentError("transform_jet: dimension mismatch");
    T.jacobian(pt.jet.x);
    PartialCache cache(T, pt.jet.x);
    std::vector<const Vec*> levels = level_ptrs(pt.jet);
    levels.push_back(&pt.top);
    std::vector<Vec> primed = primed_levels(cache, levels, pt.jet.order);
    JetPoint base(pt.jet.order, T.forward(pt.jet.x),
                  std::vector<Vec>(primed.begin(), primed.end() - 1));
    return ExtendedJetPoint(std::move(base), primed.back());
}

std::vector<std::vector<Mat>> prolonged_jacobian(const ChartTransition& T, const JetPoint& pt,
                                                 int top_level) {
    if (top_level > pt.order - 1)
        throw ArgumentError("prolonged_jacobian: top level exceeds available jets");
    PartialCache cache(T, pt.x);
    std::vector<const Vec*> levels = level_ptrs(pt);
    std::vector<std::vector<Mat>> M(top_level + 1);
    for (int b = 0; b <= top_level; ++b) M[b].resize(b + 1, Mat(pt.dim, pt.dim));

    M[0][0] = cache.contract_free({});
    for (int b = 1; b <= top_level; ++b) {
        for_each_composition(b, [&](std::span<const int> parts) {
            const int s = static_cast<int>(parts.size());
            const double w = 1.0 / factorial(s);
            // d/dx block: one extra derivative slot
            {
                std::vector<const Vec*> vs;
                for (int p : parts) vs.push_back(levels[p]);
                Mat mx = cache.contract_free(vs);
                for (int i = 0; i < pt.dim; ++i)
                    for (int j = 0; j < pt.dim; ++j) M[b][0](i, j) += w * mx(i, j);
            }
            // d/dy^(a) blocks: free one slot whose part equals a
            for (int pos = 0; pos < s; ++pos) {
                const int a = parts[pos];
                std::vector<const Vec*> vs;
                for (int r = 0; r < s; ++r)
                    if (r != pos) vs.push_back(levels[parts[r]]);
                Mat my = cache.contract_free(vs);
                for (int i = 0; i < pt.dim; ++i)
                    for (int j = 0; j < pt.dim; ++j) M[b][a](i, j) += w * my(i, j);
            }
        });
    }
    return M;
}

PhasePoint transform_momenta(const ChartTransition& T, const PhasePoint& pt) {
    const int k = pt.jet.order;
    JetPoint primed_jet = transform_jet(T, pt.jet);
    auto M = prolonged_jacobian(T, pt.jet, k - 1);
    std::vector<Vec> pp(k);
    for (int a = k - 1; a >= 0; --a) {
        Vec rhs = pt.p[a];
        for (int b = a + 1; b <= k - 1; ++b) {
            Vec corr = matvec_t(M[b][a], pp[b]);
            for (int i = 0; i < pt.jet.dim; ++i) rhs[i] -= corr[i];
        }
        pp[a] = lu_solve(transpose(M[a][a]), rhs);
    }
    return PhasePoint(std::move(primed_jet), std::move(pp));
}

PhasePoint pullback_momenta(const ChartTransition& T, const JetPoint& unprimed_jet,
                            const std::vector<Vec>& primed_momenta) {
    const int k = unprimed_jet.order;
    if (static_cast<int>(primed_momenta.size()) != k)
        throw ArgumentError("pullback_momenta: expected k momentum levels");
    auto M = prolonged_jacobian(T, unprimed_jet, k - 1);
    std::vector<Vec> p(k, Vec(unprimed_jet.dim, 0.0));
    for (int a = 0; a <= k - 1; ++a)
        for (int b = a; b <= k - 1; ++b) {
            Vec c = matvec_t(M[b][a], primed_momenta[b]);
            for (int i = 0; i < unprimed_jet.dim; ++i) p[a][i] += c[i];
        }
    return PhasePoint(unprimed_jet, std::move(p));
}

DualJetPoint transform_dual(const ChartTransition& T, const DualJetPoint& pt) {
    JetPoint primed_jet = transform_jet(T, pt.jet);
    Mat J = T.jacobian(pt.jet.x);
    Vec pp = lu_solve(transpose(J), pt.pk);
    return DualJetPoint(std::move(primed_jet), std::move(pp));
}

Vec gamma_of_top_primed(const ChartTransition& T, const JetPoint& pt) {
    const int k = pt.order;
    if (k < 2) throw ArgumentError("gamma_of_top_primed: needs order >= 2");
    auto M = prolonged_jacobian(T, pt, k - 1);
    Vec out(pt.dim, 0.0);
    for (int a = 1; a <= k - 1; ++a) {
        Vec v = matvec(M[k - 1][a - 1], pt.level(a));
        for (int i = 0; i < pt.dim; ++i) out[i] += a * v[i];
    }
    return out;
}

Vec ScalarJetField::gradient_level(const ExtendedJetPoint& pt, int level) const {
    if (grad) return grad(pt, level);
    Vec g(dim);
    ExtendedJetPoint q = pt;
    Vec& slot = level == order ? q.top : q.jet.level(level);
    for (int j = 0; j < dim; ++j) {
        const double v0 = slot[j];
        const double h = fd::step(1, v0);
        slot[j] = v0 + h;
        double fp = eval(q);
        slot[j] = v0 - h;
        double fm = eval(q);
        slot[j] = v0;
        g[j] = (fp - fm) / (2.0 * h);
    }
    return g;
}

double liouville_apply(int k, const ScalarJetField& f, const ExtendedJetPoint& pt) {
    if (f.order != k || pt.jet.order != k)
        throw ArgumentError("liouville_apply: field and point order mismatch");
    double s = 0.0;
    for (int a = 1; a <= k; ++a) {
        Vec g = f.gradient_level(pt, a - 1);
        s += a * dot(pt.level(a), g);
    }
    return s;
}

} // namespace ostro
