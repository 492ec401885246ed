#include "warpcurv/immersion.hpp"

#include <cmath>
#include <sstream>

#include "warpcurv/errors.hpp"

namespace warpcurv {

namespace {

constexpr double kIsometryTol = 1e-8;
constexpr double kMeanAlignTol = 1e-10;

struct PhiJet {
    Vec q;                    // phi(p)
    Mat J;                    // m x n
    std::vector<Mat> d2;      // per ambient component: n x n
};

PhiJet eval_phi(const std::vector<Expr>& phi, int n, const Vec& p) {
    PhiJet out;
    const int m = static_cast<int>(phi.size());
    out.q = Vec(m);
    out.J = Mat(m, n);
    out.d2.reserve(static_cast<std::size_t>(m));
    std::vector<Scalar2> env = Scalar2::lift(p);
    for (int a = 0; a < m; ++a) {
        Scalar2 s = phi[static_cast<std::size_t>(a)].eval(env);
        out.q[a] = s.value();
        out.J.row(a) = s.grad().transpose();
        out.d2.push_back(s.hess());
    }
    return out;
}

}  // namespace

ImmersionMap::ImmersionMap(MetricField domain, int n1, MetricField ambient,
                           std::vector<Expr> phi)
    : domain_(std::move(domain)),
      n1_(n1),
      ambient_(std::move(ambient)),
      phi_(std::move(phi)) {
    if (n1_ < 0 || n1_ > domain_.dim())
        throw ValidationError("immersion: invalid distribution split");
    if (static_cast<int>(phi_.size()) != ambient_.dim())
        throw ValidationError(
            "immersion: component count must equal the ambient dimension");
    if (domain_.dim() > ambient_.dim())
        throw ValidationError("immersion: domain dimension exceeds ambient");
    for (const Expr& c : phi_)
        for (int v : c.free_vars(domain_.dim() + 1))
            if (v >= domain_.dim())
                throw ValidationError("immersion component references an "
                                      "undeclared variable");
}

Vec ImmersionMap::map_point(const Vec& p) const {
    std::vector<double> env(p.data(), p.data() + p.size());
    Vec q(m());
    for (int a = 0; a < m(); ++a)
        q[a] = phi_[static_cast<std::size_t>(a)].eval_value(env);
    return q;
}

double ImmersionMap::isometry_residual(const Vec& p) const {
    PhiJet jet = eval_phi(phi_, n(), p);
    const Mat gbar = ambient_.value(jet.q);
    const Mat pullback = jet.J.transpose() * gbar * jet.J;
    return (pullback - domain_.value(p)).cwiseAbs().maxCoeff();
}

ImmersionPointData immersion_at(const ImmersionMap& imm, const Vec& p) {
    const int n = imm.n();
    const int m = imm.m();

    ImmersionPointData d;
    d.p = p;
    PhiJet jet = eval_phi(imm.phi(), n, p);
    d.q = jet.q;
    d.J = jet.J;
    d.g = imm.domain().value(p);
    require_spd(d.g, p);
    d.gbar = imm.ambient().value(d.q);
    require_spd(d.gbar, d.q);

    d.isometry_residual =
        (d.J.transpose() * d.gbar * d.J - d.g).cwiseAbs().maxCoeff();
    if (d.isometry_residual > kIsometryTol) {
        std::ostringstream os;
        os << "immersion is not isometric at [" << p.transpose()
           << "]: pullback residual " << d.isometry_residual;
        throw ValidationError(os.str());
    }
    if (Eigen::FullPivLU<Mat>(d.J).rank() < n)
        throw ValidationError("immersion: Jacobian rank deficient");

    // Tangent frame: orthonormalize coordinate seeds in the domain metric
    // (base coordinates first, preserving the D1/D2 filtration), then push
    // forward.
    d.tangent_domain = gram_schmidt(d.g, Mat::Identity(n, n));
    d.tangent_ambient = d.J * d.tangent_domain;

    // Provisional normal frame: ambient coordinate vectors in index order,
    // projected off the running span.
    const int nn = m - n;
    d.normal = Mat(m, nn);
    {
        int have = 0;
        Mat span(m, n + nn);
        span.leftCols(n) = d.tangent_ambient;
        for (int a = 0; a < m && have < nn; ++a) {
            Vec v = Vec::Zero(m);
            v[a] = 1.0;
            for (int b = 0; b < n + have; ++b)
                v -= span.col(b).dot(d.gbar * v) * span.col(b);
            const double norm2 = v.dot(d.gbar * v);
            if (norm2 > 1e-10) {
                v /= std::sqrt(norm2);
                span.col(n + have) = v;
                d.normal.col(have++) = v;
            }
        }
        if (have != nn)
            throw ValidationError(
                "immersion: could not complete the normal frame");
    }

    // Second fundamental form in ambient components on the tangent frame:
    // hvec(a,b) = e_a^i e_b^j (d2phi_ij + Gbar dphi dphi - Gamma^k_ij dphi_k).
    Tensor3 gamma_dom = christoffel(imm.domain(), p);
    Tensor3 gamma_amb = christoffel(imm.ambient(), d.q);

    std::vector<Vec> hcoord(static_cast<std::size_t>(n) * n, Vec::Zero(m));
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
            Vec v(m);
            for (int al = 0; al < m; ++al) {
                double acc = jet.d2[static_cast<std::size_t>(al)](i, j);
                for (int be = 0; be < m; ++be)
                    for (int ga = 0; ga < m; ++ga)
                        acc += gamma_amb(al, be, ga) * d.J(be, i) * d.J(ga, j);
                for (int k = 0; k < n; ++k)
                    acc -= gamma_dom(k, i, j) * d.J(al, k);
                v[al] = acc;
            }
            hcoord[static_cast<std::size_t>(i) * n + j] = v;
            hcoord[static_cast<std::size_t>(j) * n + i] = v;
        }

    auto frame_h = [&](const Mat& normals) {
        std::vector<Mat> h(static_cast<std::size_t>(normals.cols()),
                           Mat::Zero(n, n));
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) {
                Vec hv = Vec::Zero(m);
                for (int i = 0; i < n; ++i)
                    for (int j = 0; j < n; ++j)
                        hv += d.tangent_domain(i, a) * d.tangent_domain(j, b) *
                              hcoord[static_cast<std::size_t>(i) * n + j];
                for (int r = 0; r < normals.cols(); ++r)
                    h[static_cast<std::size_t>(r)](a, b) =
                        normals.col(r).dot(d.gbar * hv);
            }
        return h;
    };

    d.h = frame_h(d.normal);

    // Mean curvature in the provisional frame; rotate the first normal onto
    // the mean direction when it is nonzero.
    auto mean_of = [&](const std::vector<Mat>& h) {
        Vec H = Vec::Zero(static_cast<Eigen::Index>(h.size()));
        for (std::size_t r = 0; r < h.size(); ++r)
            H[static_cast<Eigen::Index>(r)] = h[r].trace() / n;
        return H;
    };
    d.H = mean_of(d.h);
    d.H2 = d.H.squaredNorm();

    if (nn > 0 && std::sqrt(d.H2) > kMeanAlignTol) {
        Vec hdir = Vec::Zero(m);
        for (int r = 0; r < nn; ++r) hdir += d.H[r] * d.normal.col(r);
        Mat seeds(m, 1);
        seeds.col(0) = hdir;
        // Re-span the normal bundle with the mean direction first; old
        // normals serve as completion candidates.
        Mat rest = d.normal;
        Mat newn(m, nn);
        newn.col(0) = hdir / std::sqrt(hdir.dot(d.gbar * hdir));
        int have = 1;
        for (int a = 0; a < nn && have < nn; ++a) {
            Vec v = rest.col(a);
            for (int b = 0; b < have; ++b)
                v -= newn.col(b).dot(d.gbar * v) * newn.col(b);
            const double norm2 = v.dot(d.gbar * v);
            if (norm2 > 1e-10) newn.col(have++) = v / std::sqrt(norm2);
        }
        if (have != nn)
            throw ValidationError("immersion: normal frame realignment failed");
        d.normal = newn;
        d.h = frame_h(d.normal);
        d.H = mean_of(d.h);
        d.H2 = d.H.squaredNorm();
        d.mean_aligned = true;
    }
    return d;
}

SffNorms sff_norms(const ImmersionPointData& d, int n1) {
    const int n = static_cast<int>(d.tangent_domain.cols());
    const int nn = static_cast<int>(d.normal.cols());
    SffNorms out;
    out.tr_h1 = Vec::Zero(nn);
    out.tr_h2 = Vec::Zero(nn);
    for (int r = 0; r < nn; ++r) {
        const Mat& h = d.h[static_cast<std::size_t>(r)];
        out.h_norm2 += h.squaredNorm();
        for (int i = 0; i < n1; ++i) out.tr_h1[r] += h(i, i);
        for (int i = n1; i < n; ++i) out.tr_h2[r] += h(i, i);
        for (int i = 0; i < n1; ++i)
            for (int s = n1; s < n; ++s) out.mixed_norm2 += h(i, s) * h(i, s);
    }
    return out;
}

bool mixed_tg(const ImmersionPointData& d, int n1, double tol) {
    return std::sqrt(sff_norms(d, n1).mixed_norm2) < tol;
}

GaussCheck gauss_residual(const ImmersionMap& imm,
                          const ImmersionPointData& d) {
    const int n = imm.n();
    CurvatureAtPoint dom = curvature_at(imm.domain(), d.p);
    CurvatureAtPoint amb = curvature_at(imm.ambient(), d.q);

    // Curvature tensors in the adapted frames.
    auto contract = [](const Tensor4& rm, const Mat& B) {
        const int nn = static_cast<int>(B.rows());
        const int k = static_cast<int>(B.cols());
        Tensor4 out(k);
        for (int a = 0; a < k; ++a)
            for (int b = 0; b < k; ++b)
                for (int c = 0; c < k; ++c)
                    for (int e = 0; e < k; ++e) {
                        double v = 0.0;
                        for (int i = 0; i < nn; ++i)
                            for (int j = 0; j < nn; ++j)
                                for (int s = 0; s < nn; ++s)
                                    for (int t = 0; t < nn; ++t)
                                        v += rm(i, j, s, t) * B(i, a) * B(j, b) *
                                             B(s, c) * B(t, e);
                        out(a, b, c, e) = v;
                    }
        return out;
    };
    Tensor4 Rdom = contract(dom.rm, d.tangent_domain);
    Tensor4 Ramb = contract(amb.rm, d.tangent_ambient);

    const int nn = static_cast<int>(d.normal.cols());
    GaussCheck out;
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c)
                for (int e = 0; e < n; ++e) {
                    double hterm = 0.0;
                    for (int r = 0; r < nn; ++r) {
                        const Mat& h = d.h[static_cast<std::size_t>(r)];
                        hterm += h(a, e) * h(b, c) - h(a, c) * h(b, e);
                    }
                    const double resid =
                        Rdom(a, b, c, e) - (Ramb(a, b, c, e) + hterm);
                    out.max_residual = std::max(out.max_residual, std::abs(resid));
                }

    // Contracted identity: sum_{a != b} Kbar(e_a ^ e_b) = 2 tau + ||h||^2
    // - n^2 H^2.
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            if (a == b) continue;
            out.sum_kbar += Ramb(a, b, b, a);
            if (a < b) out.tau += Rdom(a, b, b, a);
        }
    const double hn2 = sff_norms(d, imm.n1()).h_norm2;
    out.contracted_residual =
        std::abs(out.sum_kbar - (2.0 * out.tau + hn2 -
                                 static_cast<double>(n) * n * d.H2));
    return out;
}

}  // namespace warpcurv
