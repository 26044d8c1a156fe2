#include "pberg/function_space.hpp"

#include <cmath>

#include <json.hpp>

#include "pberg/errors.hpp"

namespace pberg {

namespace {

Complex int_pow(Complex z, int k) {
  if (k >= 0) return std::pow(z, k);
  return 1.0 / std::pow(z, -k);
}

}  // namespace

std::shared_ptr<const Basis> Basis::disk(const QuadratureRule& rule, int max_power) {
  if (rule.domain.kind() != Domain::Kind::Disk)
    throw ParameterError("Basis::disk: rule is not a disk rule");
  if (max_power < 0) throw ParameterError("Basis::disk: max_power must be >= 0");
  auto b = std::shared_ptr<Basis>(new Basis());
  b->domain_ = rule.domain;
  b->size_ = max_power + 1;
  b->weights_ = rule.weights;
  b->power_min_ = 0;
  b->table_.resize(rule.size(), b->size_);
  b->table_.col(0).setOnes();
  for (Eigen::Index k = 1; k < b->size_; ++k)
    b->table_.col(k) = b->table_.col(k - 1).cwiseProduct(rule.nodes.col(0));
  return b;
}

std::shared_ptr<const Basis> Basis::annulus(const QuadratureRule& rule,
                                            int laurent_min, int laurent_max) {
  if (rule.domain.kind() != Domain::Kind::Annulus)
    throw ParameterError("Basis::annulus: rule is not an annulus rule");
  if (laurent_min > laurent_max)
    throw ParameterError("Basis::annulus: empty Laurent range");
  auto b = std::shared_ptr<Basis>(new Basis());
  b->domain_ = rule.domain;
  b->size_ = laurent_max - laurent_min + 1;
  b->weights_ = rule.weights;
  b->power_min_ = laurent_min;
  b->table_.resize(rule.size(), b->size_);
  for (Eigen::Index q = 0; q < rule.size(); ++q)
    b->table_(q, 0) = int_pow(rule.nodes(q, 0), laurent_min);
  for (Eigen::Index k = 1; k < b->size_; ++k)
    b->table_.col(k) = b->table_.col(k - 1).cwiseProduct(rule.nodes.col(0));
  return b;
}

std::shared_ptr<const Basis> Basis::product(const QuadratureRule& rule,
                                            std::shared_ptr<const Basis> left,
                                            std::shared_ptr<const Basis> right) {
  if (rule.domain.kind() != Domain::Kind::Product || !rule.left || !rule.right)
    throw ParameterError("Basis::product: rule is not a tensor rule");
  if (left->node_count() != rule.left->size() || right->node_count() != rule.right->size())
    throw ParameterError("Basis::product: factor bases do not match factor rules");
  auto b = std::shared_ptr<Basis>(new Basis());
  b->domain_ = rule.domain;
  b->size_ = left->size() * right->size();
  b->weights_ = rule.weights;
  b->left_ = std::move(left);
  b->right_ = std::move(right);
  return b;
}

std::shared_ptr<const Basis> Basis::standard(const QuadratureRule& rule, int degree) {
  switch (rule.domain.kind()) {
    case Domain::Kind::Disk:
      return disk(rule, degree > 0 ? degree : 24);
    case Domain::Kind::Annulus: {
      const int m = degree > 0 ? degree : 16;
      return annulus(rule, -m, m);
    }
    case Domain::Kind::Product:
      return product(rule, standard(*rule.left, degree), standard(*rule.right, degree));
  }
  throw ParameterError("Basis::standard: unknown domain kind");
}

Eigen::RowVectorXcd Basis::row(const Point& z) const {
  if (is_product()) {
    const auto rl = left_->row(z.head(left_->domain().dimension()));
    const auto rr = right_->row(z.tail(right_->domain().dimension()));
    Eigen::RowVectorXcd out(size_);
    for (Eigen::Index i = 0; i < rl.size(); ++i)
      out.segment(i * rr.size(), rr.size()) = rl(i) * rr;
    return out;
  }
  Eigen::RowVectorXcd out(size_);
  Complex v = int_pow(z(0), power_min_);
  for (Eigen::Index k = 0; k < size_; ++k) {
    out(k) = v;
    v *= z(0);
  }
  return out;
}

Eigen::RowVectorXcd Basis::derivative_row(const Point& z, int coordinate) const {
  if (is_product()) {
    const int dl = left_->domain().dimension();
    Eigen::RowVectorXcd rl, rr;
    if (coordinate < dl) {
      rl = left_->derivative_row(z.head(dl), coordinate);
      rr = right_->row(z.tail(right_->domain().dimension()));
    } else {
      rl = left_->row(z.head(dl));
      rr = right_->derivative_row(z.tail(right_->domain().dimension()), coordinate - dl);
    }
    Eigen::RowVectorXcd out(size_);
    for (Eigen::Index i = 0; i < rl.size(); ++i)
      out.segment(i * rr.size(), rr.size()) = rl(i) * rr;
    return out;
  }
  if (coordinate != 0) throw ParameterError("derivative_row: coordinate out of range");
  Eigen::RowVectorXcd out(size_);
  for (Eigen::Index k = 0; k < size_; ++k) {
    const int e = power_min_ + static_cast<int>(k);
    out(k) = e == 0 ? Complex(0.0) : double(e) * int_pow(z(0), e - 1);
  }
  return out;
}

Eigen::VectorXcd Basis::eval_at_nodes(const Eigen::VectorXcd& coef) const {
  if (coef.size() != size_) throw ParameterError("eval_at_nodes: coefficient size mismatch");
  if (!is_product()) return table_ * coef;

  const Eigen::Index nl = left_->size(), nr = right_->size();
  const Eigen::Index ql = left_->node_count(), qr = right_->node_count();
  // U(ql_, kR): left factor evaluated column-by-column.
  Eigen::MatrixXcd U(ql, nr);
  for (Eigen::Index j = 0; j < nr; ++j) {
    Eigen::VectorXcd col(nl);
    for (Eigen::Index i = 0; i < nl; ++i) col(i) = coef(i * nr + j);
    U.col(j) = left_->eval_at_nodes(col);
  }
  Eigen::VectorXcd out(ql * qr);
  for (Eigen::Index i = 0; i < ql; ++i)
    out.segment(i * qr, qr) = right_->eval_at_nodes(U.row(i).transpose());
  return out;
}

Eigen::VectorXcd Basis::apply_adjoint(const Eigen::VectorXcd& s) const {
  if (s.size() != node_count()) throw ParameterError("apply_adjoint: node size mismatch");
  if (!is_product()) return table_.adjoint() * s;

  const Eigen::Index nl = left_->size(), nr = right_->size();
  const Eigen::Index ql = left_->node_count(), qr = right_->node_count();
  Eigen::MatrixXcd T(ql, nr);  // per left node: adjoint over right nodes
  for (Eigen::Index i = 0; i < ql; ++i)
    T.row(i) = right_->apply_adjoint(s.segment(i * qr, qr)).transpose();
  Eigen::VectorXcd out(nl * nr);
  for (Eigen::Index j = 0; j < nr; ++j) {
    const Eigen::VectorXcd g = left_->apply_adjoint(T.col(j));
    for (Eigen::Index i = 0; i < nl; ++i) out(i * nr + j) = g(i);
  }
  return out;
}

Eigen::MatrixXcd Basis::gram() const {
  if (!is_product())
    return table_.adjoint() * weights_.asDiagonal() * table_;
  const Eigen::MatrixXcd gl = left_->gram();
  const Eigen::MatrixXcd gr = right_->gram();
  const Eigen::Index nl = gl.rows(), nr = gr.rows();
  Eigen::MatrixXcd out(nl * nr, nl * nr);
  for (Eigen::Index i = 0; i < nl; ++i)
    for (Eigen::Index k = 0; k < nl; ++k)
      out.block(i * nr, k * nr, nr, nr) = gl(i, k) * gr;
  return out;
}

Eigen::MatrixXcd Basis::table() const {
  if (!is_product()) return table_;
  const Eigen::MatrixXcd tl = left_->table();
  const Eigen::MatrixXcd tr = right_->table();
  Eigen::MatrixXcd out(node_count(), size_);
  for (Eigen::Index i = 0; i < tl.rows(); ++i)
    for (Eigen::Index k = 0; k < tl.cols(); ++k)
      out.block(i * tr.rows(), k * tr.cols(), tr.rows(), tr.cols()) = tl(i, k) * tr;
  return out;
}

Eigen::VectorXcd evaluate(const CoefFunction& f, const std::vector<Point>& points) {
  Eigen::VectorXcd out(static_cast<Eigen::Index>(points.size()));
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (!f.basis->domain().contains(points[i]))
      throw ParameterError("evaluate: point outside domain");
    out(static_cast<Eigen::Index>(i)) = (f.basis->row(points[i]) * f.coef)(0);
  }
  return out;
}

Complex evaluate(const CoefFunction& f, const Point& z) {
  if (!f.basis->domain().contains(z))
    throw ParameterError("evaluate: point outside domain");
  return (f.basis->row(z) * f.coef)(0);
}

Eigen::VectorXcd values_at_nodes(const CoefFunction& f) {
  return f.basis->eval_at_nodes(f.coef);
}

double lp_norm_values(const Eigen::VectorXcd& values, const QuadratureRule& rule, double p) {
  if (p < 1.0) throw ParameterError("lp_norm: requires p >= 1");
  if (values.size() != rule.size())
    throw ParameterError("lp_norm: values length does not match node count");
  double acc = 0.0;
  if (p == 2.0) {
    for (Eigen::Index q = 0; q < values.size(); ++q)
      acc += rule.weights(q) * std::norm(values(q));
    return std::sqrt(acc);
  }
  const double half_p = 0.5 * p;
  for (Eigen::Index q = 0; q < values.size(); ++q)
    acc += rule.weights(q) * std::pow(std::norm(values(q)), half_p);
  return std::pow(acc, 1.0 / p);
}

double lp_norm(const CoefFunction& f, const QuadratureRule& rule, double p) {
  if (f.basis->node_count() != rule.size())
    throw ParameterError("lp_norm: basis and rule node counts differ");
  return lp_norm_values(values_at_nodes(f), rule, p);
}

std::string coefficients_to_json(const CoefFunction& f) {
  nlohmann::json arr = nlohmann::json::array();
  for (Eigen::Index k = 0; k < f.coef.size(); ++k)
    arr.push_back({f.coef(k).real(), f.coef(k).imag()});
  return arr.dump();
}

}  // namespace pberg
