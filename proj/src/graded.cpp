#include "jacring/graded.hpp"

#include <functional>

namespace jacring {

std::string to_string(const Bidegree& b) { return "(" + std::to_string(b.q) + "," + std::to_string(b.l) + ")"; }

int MultiIndex::total() const {
  int t = 0;
  for (int v : a) t += v;
  for (int v : b) t += v;
  return t;
}

int MultiIndex::weight(const std::vector<int>& d, const std::vector<int>& e) const {
  int w = 0;
  for (std::size_t i = 0; i < a.size(); ++i) w += a[i] * d.at(i);
  for (std::size_t j = 0; j < b.size(); ++j) w += b[j] * e.at(j);
  return w;
}

MultiIndex MultiIndex::operator+(const MultiIndex& o) const {
  if (a.size() != o.a.size() || b.size() != o.b.size()) throw std::invalid_argument("multi-index length mismatch");
  MultiIndex m = *this;
  for (std::size_t i = 0; i < a.size(); ++i) m.a[i] += o.a[i];
  for (std::size_t j = 0; j < b.size(); ++j) m.b[j] += o.b[j];
  return m;
}

std::vector<MultiIndex> multi_indices(int r, int s, int q) {
  std::vector<MultiIndex> out;
  if (q < 0) return out;
  const int parts = r + s;
  if (parts == 0) {
    if (q == 0) out.push_back({});
    return out;
  }
  std::vector<int> cur(parts, 0);
  std::function<void(int, int)> rec = [&](int i, int left) {
    if (i + 1 == parts) {
      cur[i] = left;
      out.push_back({std::vector<int>(cur.begin(), cur.begin() + r), std::vector<int>(cur.begin() + r, cur.end())});
      return;
    }
    for (int v = left; v >= 0; --v) {
      cur[i] = v;
      rec(i + 1, left - v);
    }
  };
  rec(0, q);
  return out;
}

std::size_t AMonomialHash::operator()(const AMonomial& m) const {
  std::size_t h = ExponentHash{}(m.x);
  for (int v : m.mi.a) h = h * 1000003u ^ static_cast<std::size_t>(v + 17);
  for (int v : m.mi.b) h = h * 998244353u ^ static_cast<std::size_t>(v + 31);
  return h;
}

bool AMonomialOrder::operator()(const AMonomial& a, const AMonomial& b) const {
  if (a.mi.a != b.mi.a) return a.mi.a > b.mi.a;
  if (a.mi.b != b.mi.b) return a.mi.b > b.mi.b;
  return grevlex_less(b.x, a.x);
}

Bidegree bidegree_of(const RingSpec& spec, const AMonomial& m) {
  return {m.mi.total(), m.x.total() - m.mi.weight(spec.d(), spec.e())};
}

std::string to_string(const AMonomial& m) {
  std::string out;
  auto append = [&](const std::string& name, int power) {
    if (power == 0) return;
    if (!out.empty()) out += "*";
    out += name;
    if (power > 1) out += "^" + std::to_string(power);
  };
  for (std::size_t i = 0; i < m.x.size(); ++i) append("x" + std::to_string(i), m.x[i]);
  for (std::size_t i = 0; i < m.mi.a.size(); ++i) append("mu" + std::to_string(i + 1), m.mi.a[i]);
  for (std::size_t j = 0; j < m.mi.b.size(); ++j) append("lambda" + std::to_string(j + 1), m.mi.b[j]);
  return out.empty() ? "1" : out;
}

GradedBasis::GradedBasis(Bidegree deg, std::vector<AMonomial> monomials)
    : deg_(deg), monomials_(std::move(monomials)) {
  index_.reserve(monomials_.size());
  for (std::size_t i = 0; i < monomials_.size(); ++i) index_.emplace(monomials_[i], i);
}

long GradedBasis::index_of(const AMonomial& m) const {
  auto it = index_.find(m);
  return it == index_.end() ? -1 : static_cast<long>(it->second);
}

GradedBasis enumerate_basis(const RingSpec& spec, int q, int l) {
  std::vector<AMonomial> monos;
  const auto d = spec.d();
  const auto e = spec.e();
  for (const auto& mi : multi_indices(spec.r(), spec.s(), q)) {
    int degree = mi.weight(d, e) + l;
    if (degree < 0) continue;
    for (auto& x : monomials_of_degree(spec.nvars(), degree)) monos.push_back({mi, std::move(x)});
  }
  return GradedBasis({q, l}, std::move(monos));
}

}  // namespace jacring
