#include "xrt/phantom.hpp"

#include <boost/math/quadrature/gauss.hpp>
#include <charconv>
#include <cmath>
#include <map>
#include <mutex>
#include <sstream>
#include <stdexcept>

namespace xrt {

namespace {

constexpr double kSupportSlack = 1e-12;

void validate(const Disc& d) {
  if (!std::isfinite(d.amplitude) || !std::isfinite(d.center.real()) ||
      !std::isfinite(d.center.imag()) || !std::isfinite(d.radius)) {
    throw std::invalid_argument("disc: non-finite parameter");
  }
  if (d.radius <= 0.0) throw std::invalid_argument("disc: radius must be positive");
  if (std::abs(d.center) + d.radius > 1.0 + kSupportSlack) {
    throw std::invalid_argument("disc: support leaves the unit disc");
  }
}

void validate(const RadialBump& b) {
  if (b.exponent < 1) throw std::invalid_argument("bump: exponent must be >= 1");
  if (!std::isfinite(b.amplitude)) throw std::invalid_argument("bump: non-finite amplitude");
}

void validate(const Constant& c) {
  if (!std::isfinite(c.amplitude)) throw std::invalid_argument("const: non-finite amplitude");
}

double parse_double(std::string_view key, std::string_view text) {
  double v = 0.0;
  const auto* first = text.data();
  const auto* last = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc{} || ptr != last) {
    throw std::invalid_argument("phantom spec: bad number for '" + std::string(key) + "': '" +
                                std::string(text) + "'");
  }
  return v;
}

int parse_int(std::string_view key, std::string_view text) {
  int v = 0;
  const auto* last = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), last, v);
  if (ec != std::errc{} || ptr != last) {
    throw std::invalid_argument("phantom spec: bad integer for '" + std::string(key) + "': '" +
                                std::string(text) + "'");
  }
  return v;
}

// "k1=v1,k2=v2" -> map; rejects duplicates and malformed pairs.
std::map<std::string, std::string, std::less<>> parse_fields(std::string_view body) {
  std::map<std::string, std::string, std::less<>> out;
  while (!body.empty()) {
    const auto comma = body.find(',');
    const std::string_view item = body.substr(0, comma);
    const auto eq = item.find('=');
    if (eq == std::string_view::npos || eq == 0 || eq + 1 == item.size()) {
      throw std::invalid_argument("phantom spec: malformed field '" + std::string(item) + "'");
    }
    auto [it, inserted] =
        out.emplace(std::string(item.substr(0, eq)), std::string(item.substr(eq + 1)));
    if (!inserted) throw std::invalid_argument("phantom spec: duplicate field '" + it->first + "'");
    if (comma == std::string_view::npos) break;
    body.remove_prefix(comma + 1);
  }
  return out;
}

PhantomComponent parse_component(std::string_view text) {
  const auto colon = text.find(':');
  if (colon == std::string_view::npos) {
    throw std::invalid_argument("phantom spec: missing ':' in '" + std::string(text) + "'");
  }
  const std::string_view kind = text.substr(0, colon);
  auto fields = parse_fields(text.substr(colon + 1));
  auto take = [&](std::string_view key) -> std::string {
    auto it = fields.find(key);
    if (it == fields.end()) {
      throw std::invalid_argument("phantom spec: '" + std::string(kind) + "' needs field '" +
                                  std::string(key) + "'");
    }
    std::string v = it->second;
    fields.erase(it);
    return v;
  };
  PhantomComponent comp;
  if (kind == "disc") {
    Disc d;
    d.center = {parse_double("cx", take("cx")), parse_double("cy", take("cy"))};
    d.radius = parse_double("r", take("r"));
    d.amplitude = parse_double("a", take("a"));
    comp = d;
  } else if (kind == "bump") {
    RadialBump b;
    b.exponent = parse_int("m", take("m"));
    b.amplitude = parse_double("a", take("a"));
    comp = b;
  } else if (kind == "const") {
    comp = Constant{parse_double("a", take("a"))};
  } else {
    throw std::invalid_argument("phantom spec: unknown component '" + std::string(kind) + "'");
  }
  if (!fields.empty()) {
    throw std::invalid_argument("phantom spec: unexpected field '" + fields.begin()->first + "'");
  }
  return comp;
}

bool starts_component(std::string_view rest) {
  return rest.starts_with("disc:") || rest.starts_with("bump:") || rest.starts_with("const:");
}

}  // namespace

double bump_profile_constant(int m) {
  if (m < 0) throw std::invalid_argument("bump_profile_constant: negative exponent");
  static std::mutex mu;
  static std::map<int, double> cache;
  std::lock_guard lock(mu);
  if (auto it = cache.find(m); it != cache.end()) return it->second;
  using boost::math::quadrature::gauss;
  const double v =
      gauss<double, 40>::integrate([m](double t) { return std::pow(1.0 - t * t, m); }, -1.0, 1.0);
  cache.emplace(m, v);
  return v;
}

Phantom::Phantom(std::vector<PhantomComponent> components) : components_(std::move(components)) {
  for (const auto& c : components_) {
    std::visit([](const auto& x) { validate(x); }, c);
  }
}

Phantom Phantom::parse(std::string_view spec) {
  if (spec.empty()) throw std::invalid_argument("phantom spec: empty");
  std::vector<PhantomComponent> comps;
  // '+' also appears in exponents such as 1e+3, so only split where a new
  // component keyword follows.
  std::size_t start = 0;
  for (std::size_t i = 0; i <= spec.size(); ++i) {
    if (i == spec.size() || (spec[i] == '+' && starts_component(spec.substr(i + 1)))) {
      comps.push_back(parse_component(spec.substr(start, i - start)));
      start = i + 1;
    }
  }
  return Phantom(std::move(comps));
}

std::string Phantom::to_spec() const {
  std::ostringstream os;
  os.precision(17);
  bool first = true;
  for (const auto& c : components_) {
    if (!first) os << '+';
    first = false;
    if (const auto* d = std::get_if<Disc>(&c)) {
      os << "disc:cx=" << d->center.real() << ",cy=" << d->center.imag() << ",r=" << d->radius
         << ",a=" << d->amplitude;
    } else if (const auto* b = std::get_if<RadialBump>(&c)) {
      os << "bump:m=" << b->exponent << ",a=" << b->amplitude;
    } else {
      os << "const:a=" << std::get<Constant>(c).amplitude;
    }
  }
  return os.str();
}

double Phantom::eval(cplx z) const {
  const double r2 = std::norm(z);
  if (r2 > 1.0 + kSupportSlack) throw std::domain_error("phantom eval: |z| > 1");
  double sum = 0.0;
  for (const auto& c : components_) {
    if (const auto* d = std::get_if<Disc>(&c)) {
      if (std::abs(z - d->center) < d->radius) sum += d->amplitude;
    } else if (const auto* b = std::get_if<RadialBump>(&c)) {
      if (r2 < 1.0) sum += b->amplitude * std::pow(1.0 - r2, b->exponent);
    } else if (r2 < 1.0) {
      sum += std::get<Constant>(c).amplitude;
    }
  }
  return sum;
}

double Phantom::line_integral(const TorusPoint& p) const {
  const cplx src = p.source();
  const cplx rot = std::polar(1.0, -p.theta);
  // distance from the origin to the line
  const double s0 = std::abs((rot * src).imag());
  double sum = 0.0;
  for (const auto& c : components_) {
    if (const auto* d = std::get_if<Disc>(&c)) {
      const double dist = std::abs((rot * (src - d->center)).imag());
      if (dist < d->radius) sum += 2.0 * d->amplitude * std::sqrt(d->radius * d->radius - dist * dist);
    } else if (const auto* b = std::get_if<RadialBump>(&c)) {
      const double q = 1.0 - s0 * s0;
      if (q > 0.0) {
        sum += b->amplitude * std::pow(q, b->exponent + 0.5) * bump_profile_constant(b->exponent);
      }
    } else {
      sum += std::get<Constant>(c).amplitude * chord_length(p);
    }
  }
  return sum;
}

double Phantom::mass() const {
  double m = 0.0;
  for (const auto& c : components_) {
    if (const auto* d = std::get_if<Disc>(&c)) {
      m += d->amplitude * kPi * d->radius * d->radius;
    } else if (const auto* b = std::get_if<RadialBump>(&c)) {
      m += b->amplitude * kPi / (b->exponent + 1.0);
    } else {
      m += std::get<Constant>(c).amplitude * kPi;
    }
  }
  return m;
}

}  // namespace xrt
