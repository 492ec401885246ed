#include "warpcurv/metric.hpp"

#include <cmath>
#include <sstream>

#include "warpcurv/errors.hpp"

namespace warpcurv {

MetricField::MetricField(std::vector<std::string> vars,
                         std::vector<Expr> entries)
    : dim_(static_cast<int>(vars.size())),
      vars_(std::move(vars)),
      entries_(std::move(entries)) {
    if (entries_.size() != static_cast<std::size_t>(dim_) * dim_)
        throw ValidationError("metric entry count does not match dim^2");
    for (const Expr& e : entries_)
        if (!e.valid()) throw ValidationError("metric entry is empty");
}

Mat MetricField::value(const Vec& p) const {
    if (p.size() != dim_)
        throw ValidationError("point dimension does not match chart");
    std::vector<double> env(p.data(), p.data() + p.size());
    Mat g(dim_, dim_);
    for (int i = 0; i < dim_; ++i)
        for (int j = 0; j < dim_; ++j) g(i, j) = entry(i, j).eval_value(env);
    if ((g - g.transpose()).cwiseAbs().maxCoeff() > 1e-12)
        throw ValidationError("metric not symmetric at evaluated point");
    return g;
}

MetricJet MetricField::jet(const Vec& p) const {
    if (p.size() != dim_)
        throw ValidationError("point dimension does not match chart");
    std::vector<Scalar2> env = Scalar2::lift(p);
    MetricJet out;
    out.g = Mat(dim_, dim_);
    out.dg.assign(static_cast<std::size_t>(dim_), Mat::Zero(dim_, dim_));
    out.ddg = Tensor4(dim_);
    for (int i = 0; i < dim_; ++i) {
        for (int j = 0; j < dim_; ++j) {
            Scalar2 s = entry(i, j).eval(env);
            out.g(i, j) = s.value();
            for (int k = 0; k < dim_; ++k) {
                out.dg[static_cast<std::size_t>(k)](i, j) = s.grad()[k];
                for (int l = 0; l < dim_; ++l)
                    out.ddg(k, l, i, j) = s.hess()(k, l);
            }
        }
    }
    if ((out.g - out.g.transpose()).cwiseAbs().maxCoeff() > 1e-12)
        throw ValidationError("metric not symmetric at evaluated point");
    return out;
}

MetricField euclidean_metric(int n) {
    std::vector<std::string> vars;
    vars.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) vars.push_back("x" + std::to_string(i + 1));
    std::vector<Expr> entries;
    entries.reserve(static_cast<std::size_t>(n) * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) entries.push_back(eb::lit(i == j ? 1.0 : 0.0));
    return MetricField(std::move(vars), std::move(entries));
}

Mat gram_schmidt(const Mat& g, const Mat& seeds) {
    const int n = static_cast<int>(seeds.rows());
    const int k = static_cast<int>(seeds.cols());
    Mat out(n, k);
    for (int a = 0; a < k; ++a) {
        Vec v = seeds.col(a);
        const double seed_norm2 = v.dot(g * v);
        for (int b = 0; b < a; ++b) {
            const double c = out.col(b).dot(g * v);
            v -= c * out.col(b);
        }
        const double norm2 = v.dot(g * v);
        if (!(norm2 > 1e-12 * std::max(1.0, seed_norm2)))
            throw ValidationError("gram_schmidt: rank-deficient seed set");
        out.col(a) = v / std::sqrt(norm2);
    }
    return out;
}

Mat complete_frame(const Mat& g, const Mat& seeds, const Mat& candidates) {
    const int n = static_cast<int>(g.rows());
    Mat out(n, n);
    int have = 0;
    auto push = [&](Vec v, bool strict) {
        for (int b = 0; b < have; ++b) v -= out.col(b).dot(g * v) * out.col(b);
        const double norm2 = v.dot(g * v);
        if (norm2 > 1e-10) {
            out.col(have++) = v / std::sqrt(norm2);
            return true;
        }
        if (strict) throw ValidationError("complete_frame: dependent seed");
        return false;
    };
    for (int a = 0; a < seeds.cols() && have < n; ++a) push(seeds.col(a), true);
    for (int a = 0; a < candidates.cols() && have < n; ++a)
        push(candidates.col(a), false);
    if (have != n)
        throw ValidationError("complete_frame: could not span the tangent space");
    return out;
}

void require_spd(const Mat& g, const Vec& p) {
    Eigen::LLT<Mat> llt(g);
    if (llt.info() != Eigen::Success) {
        std::ostringstream os;
        os << "metric not positive definite at point [" << p.transpose() << "]";
        throw ValidationError(os.str());
    }
}

}  // namespace warpcurv
