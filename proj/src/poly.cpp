#include "jacring/poly.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <functional>
#include <unordered_map>

#include "jacring/field.hpp"

namespace jacring {

Exponent::Exponent(std::vector<int> e) : e_(std::move(e)) {
  for (int v : e_) {
    if (v < 0) throw std::invalid_argument("negative exponent");
    total_ += v;
  }
}

Exponent Exponent::unit(std::size_t nvars, std::size_t k) {
  Exponent e(nvars);
  e.increment(k);
  return e;
}

void Exponent::increment(std::size_t i, int by) {
  if (e_.at(i) + by < 0) throw std::invalid_argument("negative exponent");
  e_[i] += by;
  total_ += by;
}

Exponent Exponent::operator*(const Exponent& o) const {
  if (o.size() != size()) throw std::invalid_argument("exponent length mismatch");
  Exponent r = *this;
  for (std::size_t i = 0; i < e_.size(); ++i) r.e_[i] += o.e_[i];
  r.total_ += o.total_;
  return r;
}

bool Exponent::divides(const Exponent& o) const {
  for (std::size_t i = 0; i < e_.size(); ++i)
    if (e_[i] > o.e_[i]) return false;
  return true;
}

bool grevlex_less(const Exponent& a, const Exponent& b) {
  if (a.total() != b.total()) return a.total() < b.total();
  for (std::size_t i = a.size(); i-- > 0;) {
    if (a[i] != b[i]) return a[i] > b[i];
  }
  return false;
}

std::size_t ExponentHash::operator()(const Exponent& e) const {
  std::uint64_t h = 1469598103934665603ull;
  for (int v : e.values()) {
    h ^= static_cast<std::uint64_t>(v) + 0x9e3779b97f4a7c15ull;
    h *= 1099511628211ull;
  }
  return static_cast<std::size_t>(h);
}

std::vector<Exponent> monomials_of_degree(std::size_t nvars, int degree) {
  std::vector<Exponent> out;
  if (degree < 0 || nvars == 0) {
    if (degree == 0 && nvars == 0) out.emplace_back(0);
    return out;
  }
  std::vector<int> cur(nvars, 0);
  std::function<void(std::size_t, int)> rec = [&](std::size_t i, int left) {
    if (i + 1 == nvars) {
      cur[i] = left;
      out.emplace_back(cur);
      return;
    }
    for (int v = left; v >= 0; --v) {
      cur[i] = v;
      rec(i + 1, left - v);
    }
  };
  rec(0, degree);
  std::sort(out.begin(), out.end(), [](const Exponent& a, const Exponent& b) { return grevlex_less(b, a); });
  return out;
}

// ------------------------------------------------------------------ HomogPoly

HomogPoly HomogPoly::monomial(const Exponent& e, mpq_class c) {
  HomogPoly p(e.size(), e.total());
  p.add_term(e, c);
  return p;
}

HomogPoly HomogPoly::variable(std::size_t nvars, std::size_t k) { return monomial(Exponent::unit(nvars, k)); }

HomogPoly HomogPoly::constant(std::size_t nvars, mpq_class c) { return monomial(Exponent(nvars), std::move(c)); }

mpq_class HomogPoly::coeff(const Exponent& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? mpq_class(0) : it->second;
}

void HomogPoly::add_term(const Exponent& e, const mpq_class& c) {
  if (e.size() != nvars_) throw std::invalid_argument("add_term: wrong number of variables");
  if (e.total() != degree_)
    throw InputError("inhomogeneous term of degree " + std::to_string(e.total()) + " in a form of degree " +
                     std::to_string(degree_));
  mpq_class v = c;
  v.canonicalize();
  if (sgn(v) == 0) return;
  auto [it, inserted] = terms_.try_emplace(e, v);
  if (!inserted) {
    it->second += v;
    if (sgn(it->second) == 0) terms_.erase(it);
  }
}

void HomogPoly::check_compatible(const HomogPoly& o, const char* op) const {
  if (nvars_ != o.nvars_) throw std::invalid_argument(std::string(op) + ": variable count mismatch");
  if (degree_ != o.degree_ && !is_zero() && !o.is_zero())
    throw InputError(std::string(op) + ": degree mismatch (" + std::to_string(degree_) + " vs " +
                     std::to_string(o.degree_) + ")");
}

HomogPoly HomogPoly::operator+(const HomogPoly& o) const {
  check_compatible(o, "add");
  if (is_zero()) return o;
  HomogPoly r = *this;
  for (const auto& [e, c] : o.terms_) r.add_term(e, c);
  return r;
}

HomogPoly HomogPoly::operator-() const {
  HomogPoly r = *this;
  for (auto& [e, c] : r.terms_) c = -c;
  return r;
}

HomogPoly HomogPoly::operator-(const HomogPoly& o) const { return *this + (-o); }

HomogPoly HomogPoly::operator*(const HomogPoly& o) const {
  if (nvars_ != o.nvars_) throw std::invalid_argument("mul: variable count mismatch");
  HomogPoly r(nvars_, degree_ + o.degree_);
  for (const auto& [e1, c1] : terms_)
    for (const auto& [e2, c2] : o.terms_) r.add_term(e1 * e2, c1 * c2);
  return r;
}

HomogPoly HomogPoly::scaled(const mpq_class& factor) const {
  mpq_class c = factor;
  c.canonicalize();
  if (sgn(c) == 0) return HomogPoly(nvars_, degree_);
  HomogPoly r = *this;
  for (auto& [e, v] : r.terms_) v *= c;
  return r;
}

bool HomogPoly::operator==(const HomogPoly& o) const {
  if (nvars_ != o.nvars_) return false;
  if (is_zero() && o.is_zero()) return true;
  return degree_ == o.degree_ && terms_ == o.terms_;
}

HomogPoly partial(const HomogPoly& p, std::size_t k) {
  if (k >= p.nvars()) throw std::out_of_range("partial: variable index out of range");
  HomogPoly r(p.nvars(), p.degree() - 1);
  for (const auto& [e, c] : p.terms()) {
    if (e[k] == 0) continue;
    Exponent d = e;
    d.increment(k, -1);
    r.add_term(d, c * e[k]);
  }
  return r;
}

std::string to_string(const HomogPoly& p) {
  if (p.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [e, c] : p.terms()) {
    mpq_class mag = abs(c);
    if (first) {
      if (sgn(c) < 0) out += "-";
    } else {
      out += sgn(c) < 0 ? " - " : " + ";
    }
    first = false;
    bool has_vars = e.total() > 0;
    bool wrote = false;
    if (mag != 1 || !has_vars) {
      out += mag.get_str();
      wrote = true;
    }
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (wrote) out += "*";
      out += "x" + std::to_string(i);
      if (e[i] > 1) out += "^" + std::to_string(e[i]);
      wrote = true;
    }
  }
  return out;
}

HomogPoly polynomial_determinant(const std::vector<std::vector<HomogPoly>>& m) {
  const std::size_t k = m.size();
  for (const auto& row : m)
    if (row.size() != k) throw std::invalid_argument("determinant: matrix is not square");
  if (k == 0) throw std::invalid_argument("determinant: empty matrix");
  if (k > 20) throw std::invalid_argument("determinant: matrix too large");
  const std::size_t nvars = m[0][0].nvars();
  // minor(mask) = det of rows [k - popcount(mask), k) restricted to columns in mask.
  std::unordered_map<std::uint32_t, HomogPoly> memo;
  std::function<HomogPoly(std::uint32_t)> minor = [&](std::uint32_t mask) -> HomogPoly {
    if (mask == 0) return HomogPoly::constant(nvars, 1);
    if (auto it = memo.find(mask); it != memo.end()) return it->second;
    std::size_t row = k - static_cast<std::size_t>(std::popcount(mask));
    int row_degree = m[row][0].degree();
    HomogPoly acc;
    bool started = false;
    int position = 0;
    for (std::size_t j = 0; j < k; ++j) {
      if (!(mask & (1u << j))) continue;
      const HomogPoly& entry = m[row][j];
      if (!entry.is_zero()) {
        HomogPoly term = entry * minor(mask & ~(1u << j));
        if (position % 2) term = -term;
        acc = started ? acc + term : term;
        started = true;
      }
      ++position;
    }
    if (!started) {
      HomogPoly sub = minor(mask & ~(1u << std::countr_zero(mask)));
      acc = HomogPoly(nvars, row_degree + sub.degree());
    }
    memo.emplace(mask, acc);
    return acc;
  };
  return minor(k >= 32 ? 0xffffffffu : ((1u << k) - 1));
}

HomogPoly derivative_determinant(const std::vector<HomogPoly>& forms) {
  const std::size_t count = forms.size();
  for (const auto& f : forms)
    if (f.nvars() != count)
      throw InputError("derivative_determinant: need exactly n+1 forms in n+1 variables, got " +
                       std::to_string(count) + " forms in " + std::to_string(f.nvars()) + " variables");
  if (count == 0) throw InputError("derivative_determinant: no forms");
  std::vector<std::vector<HomogPoly>> m(count);
  for (std::size_t i = 0; i < count; ++i)
    for (std::size_t k = 0; k < count; ++k) m[i].push_back(partial(forms[i], k));
  return polynomial_determinant(m);
}

HomogPoly affine_jacobian(const std::vector<HomogPoly>& forms) {
  const std::size_t n = forms.size();
  for (const auto& f : forms)
    if (f.nvars() != n + 1) throw InputError("affine_jacobian: need n forms in n+1 variables");
  if (n == 0) throw InputError("affine_jacobian: no forms");
  std::vector<std::vector<HomogPoly>> m(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 1; k <= n; ++k) m[i].push_back(partial(forms[i], k));
  return polynomial_determinant(m);
}

IdentityStarReport expand_identity_star(const std::vector<HomogPoly>& forms) {
  const std::size_t count = forms.size();
  IdentityStarReport r;
  HomogPoly a = derivative_determinant(forms);
  r.lhs = HomogPoly::variable(count, 0) * a;
  bool started = false;
  for (std::size_t v = 0; v < count; ++v) {
    std::vector<HomogPoly> rest;
    for (std::size_t u = 0; u < count; ++u)
      if (u != v) rest.push_back(forms[u]);
    HomogPoly term = forms[v].scaled(forms[v].degree()) * affine_jacobian(rest);
    if (v % 2) term = -term;
    r.rhs = started ? r.rhs + term : term;
    started = true;
  }
  r.holds = r.lhs == r.rhs;
  return r;
}

bool verify_identity_star(const std::vector<HomogPoly>& forms) { return expand_identity_star(forms).holds; }

bool euler_identity_holds(const HomogPoly& f) {
  HomogPoly sum(f.nvars(), f.degree());
  for (std::size_t k = 0; k < f.nvars(); ++k) sum = sum + HomogPoly::variable(f.nvars(), k) * partial(f, k);
  return sum == f.scaled(f.degree());
}

}  // namespace jacring
