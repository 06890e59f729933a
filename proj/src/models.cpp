#include "ostro/models.hpp"

#include <cmath>
#include <random>

#include "ostro/fd.hpp"

namespace ostro {

// --- LagrangianModel ---

double LagrangianModel::operator()(const ExtendedJetPoint& pt) const {
    check_domain(pt);
    return eval(pt);
}

void LagrangianModel::check_domain(const ExtendedJetPoint& pt) const {
    if (pt.jet.order != order || pt.jet.dim != dim)
        throw ArgumentError("LagrangianModel: point order/dim mismatch");
    if (excluded && excluded(pt)) throw DomainError("LagrangianModel: point in excluded set");
}

Vec LagrangianModel::gradient_level(const ExtendedJetPoint& pt, int level) const {
    check_domain(pt);
    if (level < 0 || level > order) throw ArgumentError("LagrangianModel: bad gradient level");
    if (grad) return grad(pt, level);
    ExtendedJetPoint q = pt;
    Vec& slot = level == order ? q.top : q.jet.level(level);
    Vec g(dim);
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

Mat LagrangianModel::vertical_hessian(const ExtendedJetPoint& pt) const {
    check_domain(pt);
    if (vhess) return vhess(pt);
    ExtendedJetPoint q = pt;
    auto f = [&](const Vec& v) {
        q.top = v;
        return eval(q);
    };
    return fd::hessian(f, pt.top);
}

LagrangianModel LagrangianModel::from_eval(int k, int m,
                                           std::function<double(const ExtendedJetPoint&)> f) {
    LagrangianModel L;
    L.order = k;
    L.dim = m;
    L.eval = std::move(f);
    return L;
}

// --- AffineHamiltonianModel ---

double AffineHamiltonianModel::operator()(const DualJetPoint& pt) const {
    check_domain(pt);
    return h0(pt);
}

void AffineHamiltonianModel::check_domain(const DualJetPoint& pt) const {
    if (pt.jet.order != order || pt.jet.dim != dim)
        throw ArgumentError("AffineHamiltonianModel: point order/dim mismatch");
    if (excluded && excluded(pt)) throw DomainError("AffineHamiltonianModel: point in excluded set");
}

Vec AffineHamiltonianModel::gradient_level(const DualJetPoint& pt, int level) const {
    check_domain(pt);
    if (level < 0 || level > order - 1)
        throw ArgumentError("AffineHamiltonianModel: bad gradient level");
    if (grad) return grad(pt, level);
    DualJetPoint q = pt;
    Vec& slot = q.jet.level(level);
    Vec g(dim);
    for (int j = 0; j < dim; ++j) {
        const double v0 = slot[j];
        const double h = fd::step(1, v0);
        slot[j] = v0 + h;
        double fp = h0(q);
        slot[j] = v0 - h;
        double fm = h0(q);
        slot[j] = v0;
        g[j] = (fp - fm) / (2.0 * h);
    }
    return g;
}

Vec AffineHamiltonianModel::gradient_p(const DualJetPoint& pt) const {
    check_domain(pt);
    if (grad_p) return grad_p(pt);
    DualJetPoint q = pt;
    Vec g(dim);
    for (int j = 0; j < dim; ++j) {
        const double v0 = q.pk[j];
        const double h = fd::step(1, v0);
        q.pk[j] = v0 + h;
        double fp = h0(q);
        q.pk[j] = v0 - h;
        double fm = h0(q);
        q.pk[j] = v0;
        g[j] = (fp - fm) / (2.0 * h);
    }
    return g;
}

Mat AffineHamiltonianModel::vertical_hessian(const DualJetPoint& pt) const {
    check_domain(pt);
    if (vhess) return vhess(pt);
    DualJetPoint q = pt;
    auto f = [&](const Vec& p) {
        q.pk = p;
        return h0(q);
    };
    return fd::hessian(f, pt.pk);
}

AffineHamiltonianModel AffineHamiltonianModel::from_h0(int k, int m,
                                                       std::function<double(const DualJetPoint&)> f) {
    AffineHamiltonianModel h;
    h.order = k;
    h.dim = m;
    h.h0 = std::move(f);
    return h;
}

// --- AffineSection ---

Mat AffineSection::gradient_level(const JetPoint& pt, int level) const {
    if (grad) return grad(pt, level);
    JetPoint q = pt;
    Vec& slot = q.level(level);
    Mat G(dim, dim);
    for (int j = 0; j < dim; ++j) {
        const double v0 = slot[j];
        const double h = fd::step(1, v0);
        slot[j] = v0 + h;
        Vec sp = s(q);
        slot[j] = v0 - h;
        Vec sm = s(q);
        slot[j] = v0;
        for (int i = 0; i < dim; ++i) G(i, j) = (sp[i] - sm[i]) / (2.0 * h);
    }
    return G;
}

AffineSection AffineSection::zero(int k, int m) {
    AffineSection z;
    z.order = k;
    z.dim = m;
    z.s = [m](const JetPoint&) { return Vec(m, 0.0); };
    z.grad = [m](const JetPoint&, int) { return Mat(m, m); };
    return z;
}

// --- regularity reports ---

namespace {

RegularityRow summarize(const Mat& H, double tol) {
    RegularityRow row;
    row.det = determinant(H);
    Vec ev = sym_eigenvalues(H);
    row.min_eigenvalue = ev.front();
    row.max_eigenvalue = ev.back();
    double amin = std::abs(ev.front());
    for (double e : ev) amin = std::min(amin, std::abs(e));
    row.nondegenerate = amin > tol;
    row.positive_definite = ev.front() > tol;
    return row;
}

template <typename Rows>
RegularityReport collect(Rows&& rows) {
    RegularityReport rep;
    rep.rows = std::forward<Rows>(rows);
    if (rep.rows.empty()) return rep;
    rep.min_abs_det = std::abs(rep.rows[0].det);
    rep.min_eigenvalue = rep.rows[0].min_eigenvalue;
    rep.all_nondegenerate = true;
    rep.all_positive_definite = true;
    for (const RegularityRow& r : rep.rows) {
        rep.min_abs_det = std::min(rep.min_abs_det, std::abs(r.det));
        rep.min_eigenvalue = std::min(rep.min_eigenvalue, r.min_eigenvalue);
        rep.all_nondegenerate = rep.all_nondegenerate && r.nondegenerate;
        rep.all_positive_definite = rep.all_positive_definite && r.positive_definite;
    }
    return rep;
}

} // namespace

RegularityReport regularity_report(const LagrangianModel& L, const std::vector<ExtendedJetPoint>& pts,
                                   double tol) {
    std::vector<RegularityRow> rows;
    rows.reserve(pts.size());
    for (const auto& pt : pts) rows.push_back(summarize(L.vertical_hessian(pt), tol));
    return collect(std::move(rows));
}

RegularityReport regularity_report(const AffineHamiltonianModel& h, const std::vector<DualJetPoint>& pts,
                                   double tol) {
    std::vector<RegularityRow> rows;
    rows.reserve(pts.size());
    for (const auto& pt : pts) rows.push_back(summarize(h.vertical_hessian(pt), tol));
    return collect(std::move(rows));
}

// --- built-in families ---

LagrangianModel quadratic_kinetic_lagrangian(int k, int m) {
    LagrangianModel L;
    L.order = k;
    L.dim = m;
    L.eval = [](const ExtendedJetPoint& pt) { return 0.5 * dot(pt.top, pt.top); };
    L.grad = [m](const ExtendedJetPoint& pt, int level) {
        return level == pt.jet.order ? pt.top : Vec(m, 0.0);
    };
    L.vhess = [m](const ExtendedJetPoint&) { return Mat::identity(m); };
    return L;
}

LagrangianModel cosh_lagrangian(int k, int m) {
    LagrangianModel L;
    L.order = k;
    L.dim = m;
    L.eval = [](const ExtendedJetPoint& pt) {
        double s = 0.0;
        for (double v : pt.top) s += std::cosh(v);
        return s;
    };
    L.grad = [m](const ExtendedJetPoint& pt, int level) {
        Vec g(m, 0.0);
        if (level == pt.jet.order)
            for (int i = 0; i < m; ++i) g[i] = std::sinh(pt.top[i]);
        return g;
    };
    L.vhess = [m](const ExtendedJetPoint& pt) {
        Mat H(m, m);
        for (int i = 0; i < m; ++i) H(i, i) = std::cosh(pt.top[i]);
        return H;
    };
    return L;
}

LagrangianModel convex_quartic_lagrangian(int k, int m, unsigned seed) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> U(-1.0, 1.0);
    Mat A(m, m);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) A(i, j) = U(rng);
    A = matmul(transpose(A), A);
    for (int i = 0; i < m; ++i) A(i, i) += 0.5 + m; // safely SPD
    Vec c(m), b(m);
    for (int i = 0; i < m; ++i) c[i] = 0.1 + 0.4 * (U(rng) + 1.0);
    for (int i = 0; i < m; ++i) b[i] = U(rng);
    std::vector<Mat> D(k); // coupling of each lower level into the linear term
    for (int a = 0; a < k; ++a) {
        D[a] = Mat(m, m);
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j) D[a](i, j) = 0.3 * U(rng);
    }

    LagrangianModel L;
    L.order = k;
    L.dim = m;
    L.eval = [A, c, b, D](const ExtendedJetPoint& pt) {
        const Vec& v = pt.top;
        double s = 0.5 * dot(v, matvec(A, v));
        for (size_t i = 0; i < v.size(); ++i) s += c[i] * v[i] * v[i] * v[i] * v[i];
        Vec lin = b;
        for (int a = 0; a < pt.jet.order; ++a) lin += matvec(D[a], pt.jet.level(a));
        s += dot(v, lin);
        for (int a = 0; a < pt.jet.order; ++a) {
            const Vec& u = pt.jet.level(a);
            s += 0.5 * dot(u, u);
        }
        return s;
    };
    L.grad = [A, c, b, D](const ExtendedJetPoint& pt, int level) {
        const Vec& v = pt.top;
        const int k = pt.jet.order;
        if (level == k) {
            Vec g = matvec(A, v);
            for (size_t i = 0; i < v.size(); ++i) g[i] += 4.0 * c[i] * v[i] * v[i] * v[i];
            g += b;
            for (int a = 0; a < k; ++a) g += matvec(D[a], pt.jet.level(a));
            return g;
        }
        Vec g = matvec_t(D[level], v);
        g += pt.jet.level(level);
        return g;
    };
    L.vhess = [A, c](const ExtendedJetPoint& pt) {
        Mat H = A;
        for (int i = 0; i < H.rows; ++i) H(i, i) += 12.0 * c[i] * pt.top[i] * pt.top[i];
        return H;
    };
    return L;
}

LagrangianModel indefinite_lagrangian(int k, int m) {
    LagrangianModel L;
    L.order = k;
    L.dim = m;
    L.hyperregular = false;
    L.eval = [](const ExtendedJetPoint& pt) {
        double s = 0.0;
        for (size_t i = 0; i < pt.top.size(); ++i)
            s += (i % 2 == 0 ? 0.5 : -0.5) * pt.top[i] * pt.top[i];
        return s;
    };
    L.grad = [m](const ExtendedJetPoint& pt, int level) {
        Vec g(m, 0.0);
        if (level == pt.jet.order)
            for (int i = 0; i < m; ++i) g[i] = (i % 2 == 0 ? 1.0 : -1.0) * pt.top[i];
        return g;
    };
    L.vhess = [m](const ExtendedJetPoint&) {
        Mat H(m, m);
        for (int i = 0; i < m; ++i) H(i, i) = i % 2 == 0 ? 1.0 : -1.0;
        return H;
    };
    return L;
}

} // namespace ostro
