#include "ustokes/vector_field.hpp"

#include "ustokes/errors.hpp"

namespace ustokes {

struct VectorField::Node {
  Kind kind = Kind::Sum;
  ScalarField scalar;
  std::vector<VectorField> terms;
  double factor = 1.0;
  VectorEvaluator sampled;
};

namespace {

VectorField leaf(VectorField::Kind kind, ScalarField s) {
  switch (kind) {
    case VectorField::Kind::Gradient:
      return VectorField::gradient(std::move(s));
    case VectorField::Kind::CurlR:
      return VectorField::curl_r(std::move(s));
    case VectorField::Kind::CurlCurlR:
      return VectorField::curl_curl_r(std::move(s));
    case VectorField::Kind::RadialTimes:
      return VectorField::radial_times(std::move(s));
    default:
      throw InvalidArgument("not a leaf kind");
  }
}

Vec3 eval_local(const VectorField& v, const Spherical& p, double t, const SphericalFrame& frame) {
  using K = VectorField::Kind;
  switch (v.kind()) {
    case K::Gradient: {
      const ScalarJet j = v.scalar().jet(p, t);
      return {j.d_r, j.d_theta_over_r, j.d_phis_over_r};
    }
    case K::CurlR: {
      const ScalarJet j = v.scalar().jet(p, t);
      return {0.0, j.d_phis, -j.d_theta};
    }
    case K::CurlCurlR: {
      const ScalarJet j = v.scalar().jet(p, t);
      return {j.minus_l_over_r, j.d_theta_over_r + j.dr_d_theta, j.d_phis_over_r + j.dr_d_phis};
    }
    case K::RadialTimes:
      return {p.r * v.scalar().eval(p, t), 0.0, 0.0};
    case K::Sum: {
      Vec3 acc;
      for (const auto& term : v.terms()) acc += eval_local(term, p, t, frame);
      return acc;
    }
    case K::Scaled:
      return v.factor() * eval_local(v.terms().front(), p, t, frame);
    case K::Sampled:
      return frame.to_local(v.evaluator()(to_cartesian(p), t));
  }
  return {};
}

}  // namespace

VectorField::VectorField() : node_(std::make_shared<Node>()) {}
VectorField::VectorField(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

VectorField VectorField::gradient(ScalarField s) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Gradient;
  n->scalar = std::move(s);
  return VectorField(std::move(n));
}

VectorField VectorField::curl_r(ScalarField s) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::CurlR;
  n->scalar = std::move(s);
  return VectorField(std::move(n));
}

VectorField VectorField::curl_curl_r(ScalarField s) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::CurlCurlR;
  n->scalar = std::move(s);
  return VectorField(std::move(n));
}

VectorField VectorField::radial_times(ScalarField s) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::RadialTimes;
  n->scalar = std::move(s);
  return VectorField(std::move(n));
}

VectorField VectorField::sum(std::vector<VectorField> terms) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Sum;
  for (auto& t : terms) {
    if (!t.is_zero()) n->terms.push_back(std::move(t));
  }
  return VectorField(std::move(n));
}

VectorField VectorField::scaled(double factor, VectorField v) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Scaled;
  n->factor = factor;
  n->terms.push_back(std::move(v));
  return VectorField(std::move(n));
}

VectorField VectorField::sampled(VectorEvaluator f) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Sampled;
  n->sampled = std::move(f);
  return VectorField(std::move(n));
}

VectorField::Kind VectorField::kind() const { return node_->kind; }
const ScalarField& VectorField::scalar() const { return node_->scalar; }
const std::vector<VectorField>& VectorField::terms() const { return node_->terms; }
double VectorField::factor() const { return node_->factor; }

bool VectorField::is_analytic() const {
  if (node_->kind == Kind::Sampled) return false;
  for (const auto& t : node_->terms) {
    if (!t.is_analytic()) return false;
  }
  return true;
}

bool VectorField::is_zero() const {
  switch (node_->kind) {
    case Kind::Sampled:
      return false;
    case Kind::Sum:
      for (const auto& t : node_->terms) {
        if (!t.is_zero()) return false;
      }
      return true;
    case Kind::Scaled:
      return node_->factor == 0.0 || node_->terms.front().is_zero();
    default:
      return node_->scalar.empty();
  }
}

Vec3 VectorField::eval(const Vec3& x, double t) const {
  if (node_->kind == Kind::Sampled) return node_->sampled(x, t);
  return eval(to_spherical(x), t);
}

Vec3 VectorField::eval(const Spherical& p, double t) const {
  const auto frame = SphericalFrame::at(p.theta, p.phi);
  const Vec3 local = eval_local(*this, p, t, frame);
  return frame.to_cartesian(local.x, local.y, local.z);
}

Vec3 VectorField::eval_spherical(const Spherical& p, double t) const {
  return eval_local(*this, p, t, SphericalFrame::at(p.theta, p.phi));
}

VectorEvaluator VectorField::evaluator() const {
  if (node_->kind == Kind::Sampled) return node_->sampled;
  VectorField self = *this;
  return [self](const Vec3& x, double t) { return self.eval(x, t); };
}

VectorField operator+(const VectorField& a, const VectorField& b) { return VectorField::sum({a, b}); }
VectorField operator-(const VectorField& a, const VectorField& b) {
  return VectorField::sum({a, VectorField::scaled(-1.0, b)});
}
VectorField operator*(double s, const VectorField& v) { return VectorField::scaled(s, v); }

// ---------------------------------------------------------------------------

namespace {

void require_analytic(const VectorField& v) {
  if (v.kind() == VectorField::Kind::Sampled) throw NotAnalytic("exact operator applied to a sampled field");
}

template <class LeafFn>
VectorField map_linear(const VectorField& v, LeafFn&& on_leaf) {
  require_analytic(v);
  switch (v.kind()) {
    case VectorField::Kind::Sum: {
      std::vector<VectorField> out;
      for (const auto& t : v.terms()) out.push_back(map_linear(t, on_leaf));
      return VectorField::sum(std::move(out));
    }
    case VectorField::Kind::Scaled:
      return VectorField::scaled(v.factor(), map_linear(v.terms().front(), on_leaf));
    default:
      return on_leaf(v);
  }
}

}  // namespace

VectorField exact_laplacian(const VectorField& v) {
  return map_linear(v, [](const VectorField& l) {
    ScalarField lap = exact_laplacian(l.scalar());
    if (l.kind() == VectorField::Kind::RadialTimes) {
      return VectorField::radial_times(std::move(lap)) + 2.0 * VectorField::gradient(l.scalar());
    }
    return leaf(l.kind(), std::move(lap));
  });
}

VectorField exact_dt(const VectorField& v) {
  return map_linear(v, [](const VectorField& l) { return leaf(l.kind(), exact_dt(l.scalar())); });
}

VectorField heat_op(const VectorField& v, const FluidParams& params) {
  return map_linear(v, [&params](const VectorField& l) {
    ScalarField h = heat_op(l.scalar(), params);
    if (l.kind() == VectorField::Kind::RadialTimes) {
      return VectorField::radial_times(std::move(h)) + 2.0 * VectorField::gradient(l.scalar());
    }
    return leaf(l.kind(), std::move(h));
  });
}

VectorField exact_curl(const VectorField& v) {
  return map_linear(v, [](const VectorField& l) -> VectorField {
    switch (l.kind()) {
      case VectorField::Kind::Gradient:
        return VectorField();
      case VectorField::Kind::CurlR:
        return VectorField::curl_curl_r(l.scalar());
      case VectorField::Kind::CurlCurlR:
        return VectorField::curl_r(-1.0 * exact_laplacian(l.scalar()));
      default:  // curl(r S) is CurlR(S) by definition
        return VectorField::curl_r(l.scalar());
    }
  });
}

double exact_divergence(const VectorField& v, const Vec3& x, double t) {
  require_analytic(v);
  switch (v.kind()) {
    case VectorField::Kind::Gradient:
      return exact_laplacian(v.scalar()).eval(x, t);
    case VectorField::Kind::CurlR:
    case VectorField::Kind::CurlCurlR:
      return 0.0;
    case VectorField::Kind::RadialTimes: {
      const Spherical p = to_spherical(x);
      const ScalarJet j = v.scalar().jet(p, t);
      return 3.0 * j.value + p.r * j.d_r;
    }
    case VectorField::Kind::Sum: {
      double s = 0.0;
      for (const auto& term : v.terms()) s += exact_divergence(term, x, t);
      return s;
    }
    case VectorField::Kind::Scaled:
      return v.factor() * exact_divergence(v.terms().front(), x, t);
    case VectorField::Kind::Sampled:
      break;
  }
  return 0.0;
}

std::optional<ScalarField> divergence_field(const VectorField& v) {
  if (!v.is_analytic()) return std::nullopt;
  switch (v.kind()) {
    case VectorField::Kind::Gradient:
      return exact_laplacian(v.scalar());
    case VectorField::Kind::CurlR:
    case VectorField::Kind::CurlCurlR:
      return ScalarField();
    case VectorField::Kind::RadialTimes:
      try {
        // div(r S) = 3 S + r dS/dr = 2 S + d/dr(r S)
        return simplify(2.0 * v.scalar() + radial_euler(v.scalar()));
      } catch (const InvalidArgument&) {
        return std::nullopt;
      }
    case VectorField::Kind::Sum: {
      ScalarField acc;
      for (const auto& term : v.terms()) {
        auto d = divergence_field(term);
        if (!d) return std::nullopt;
        acc = acc + *d;
      }
      return simplify(acc);
    }
    case VectorField::Kind::Scaled: {
      auto d = divergence_field(v.terms().front());
      if (!d) return std::nullopt;
      return v.factor() * *d;
    }
    case VectorField::Kind::Sampled:
      break;
  }
  return std::nullopt;
}

}  // namespace ustokes
