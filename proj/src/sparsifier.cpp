#include "kec/sparsifier.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>

namespace kec {

namespace {

constexpr double kRelTol = 1e-12;

// strict "a > b" with a relative guard so exact boundary values stay on the
// closed side of their interval
bool definitely_greater(double a, double b) { return a > b * (1.0 + kRelTol); }

}  // namespace

Sparsifier::Sparsifier(VertexId n, int k, double epsilon, std::uint64_t seed)
    : n_(n), k_(k), eps_(epsilon), rng_(seed) {
  if (k < 1) throw ContractViolation("k must be >= 1");
  if (!(epsilon > 0.0) || !std::isfinite(epsilon))
    throw ContractViolation("epsilon must be positive and finite");
  double raw = 2.0 * std::log(static_cast<double>(n) / epsilon) /
               std::log1p(epsilon);
  ell_ = std::max(1, static_cast<int>(std::ceil(raw - 1e-9)));
  pow_.resize(ell_ + 1);
  pow_[0] = 1.0;
  for (int i = 1; i <= ell_; ++i) pow_[i] = pow_[i - 1] * (1.0 + epsilon);
  buckets_.reserve(ell_);
  for (int i = 1; i <= ell_; ++i)
    buckets_.push_back(Bucket{PartialColoring(n, palette_of(i)), {}});
}

double Sparsifier::threshold(int i) const {
  if (i < 0 || i > ell_) throw ContractViolation("threshold index out of range");
  return 1.0 / pow_[i];
}

Color Sparsifier::palette_of(int i) const {
  if (i < 1 || i > ell_) throw ContractViolation("bucket index out of range");
  return 3 * static_cast<Color>(std::ceil(k_ * pow_[i] - 1e-9));
}

std::optional<int> Sparsifier::bucket_index(double x) const {
  if (!(x > 0.0) || definitely_greater(x, 1.0))
    throw ContractViolation("value must lie in (0, 1]");
  for (int i = 1; i <= ell_; ++i)
    if (definitely_greater(x, threshold(i))) return i;
  return std::nullopt;
}

double Sparsifier::default_d(int k, double epsilon) {
  double a = 1.0 / (k * epsilon);
  double b = 4.0 * std::log(2.0 / epsilon) / (k * epsilon * epsilon);
  return std::max(a, b);
}

int Sparsifier::bucket_of(Edge e) const {
  auto it = location_.find(e);
  return it == location_.end() ? 0 : it->second.first;
}

std::vector<Edge> Sparsifier::bucket_edges(int i) const {
  const Bucket& bk = bucket(i);
  std::vector<Edge> out;
  out.reserve(bk.coloring.colored_count());
  for (const auto& [e, c] : bk.coloring.assignment()) out.push_back(e);
  std::sort(out.begin(), out.end());
  return out;
}

const PartialColoring& Sparsifier::bucket_coloring(int i) const {
  return bucket(i).coloring;
}

Color Sparsifier::random_free_color(const Bucket& bk, int i, Edge e) {
  Color palette = palette_of(i);
  std::uniform_int_distribution<Color> draw(1, palette);
  // both endpoint degrees are below palette/3, so a draw lands on a free
  // color with probability > 1/3 and the loop is short
  for (int attempt = 0; attempt < 64 * 64; ++attempt) {
    Color c = draw(rng_);
    if (bk.coloring.is_free(e.u, c) && bk.coloring.is_free(e.v, c)) return c;
  }
  throw std::logic_error("free-color sampling exhausted its attempts");
}

void Sparsifier::apply_value_change(Edge e, double old_x, double new_x) {
  std::optional<int> old_i;
  if (old_x != 0.0) old_i = bucket_index(old_x);
  std::optional<int> new_i;
  if (new_x != 0.0) new_i = bucket_index(new_x);

  auto it = location_.find(e);
  if (old_i) {
    if (it == location_.end() || it->second.first != *old_i ||
        std::abs(it->second.second - old_x) >
            kRelTol * std::max(1.0, std::abs(old_x)))
      throw ContractViolation("old value does not match the tracked state");
  } else if (it != location_.end()) {
    throw ContractViolation("old value says untracked but the edge is tracked");
  }

  if (old_i && new_i && *old_i == *new_i) {
    it->second.second = new_x;  // same bucket: the color can stay
    return;
  }

  if (old_i) {
    Bucket& bk = bucket(*old_i);
    Color c = bk.coloring.color_of(e);
    bk.coloring.unassign(e);
    auto& vec = bk.by_color[c];
    vec.erase(std::find(vec.begin(), vec.end(), e));
    if (vec.empty()) bk.by_color.erase(c);
    location_.erase(it);
  }
  if (new_i) {
    Bucket& bk = bucket(*new_i);
    Color c = random_free_color(bk, *new_i, e);
    bk.coloring.assign(e, c);
    bk.by_color[c].push_back(e);
    location_[e] = {*new_i, new_x};
  }
}

std::vector<Edge> Sparsifier::request(double d) {
  double floor_d = default_d(k_, eps_);
  if (d < floor_d * (1.0 - kRelTol))
    throw ContractViolation("sampling density below the admissible floor");

  long long budget =
      3 * static_cast<long long>(std::ceil(k_ * d - 1e-9));
  std::vector<Edge> out;
  for (int i = 1; i <= ell_; ++i) {
    const Bucket& bk = bucket(i);
    if (bk.coloring.colored_count() == 0) continue;
    Color palette = palette_of(i);
    if (d >= pow_[i - 1] * (1.0 - kRelTol) || budget >= palette) {
      for (const auto& [e, c] : bk.coloring.assignment()) out.push_back(e);
      continue;
    }
    // Floyd's sampling: budget distinct colors uniformly from [1, palette]
    std::unordered_set<Color> picked;
    for (Color j = palette - static_cast<Color>(budget) + 1; j <= palette;
         ++j) {
      std::uniform_int_distribution<Color> draw(1, j);
      Color c = draw(rng_);
      if (!picked.insert(c).second) picked.insert(j);
    }
    for (Color c : picked) {
      auto it = bk.by_color.find(c);
      if (it == bk.by_color.end()) continue;
      out.insert(out.end(), it->second.begin(), it->second.end());
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool Sparsifier::validate(std::string* why) const {
  auto fail = [&](const std::string& msg) {
    if (why) *why = msg;
    return false;
  };
  std::size_t total = 0;
  for (int i = 1; i <= ell_; ++i) {
    const Bucket& bk = bucket(i);
    if (bk.coloring.palette() != palette_of(i))
      return fail("bucket " + std::to_string(i) + " palette mismatch");
    std::string sub;
    if (!bk.coloring.validate(&sub))
      return fail("bucket " + std::to_string(i) + ": " + sub);
    std::size_t listed = 0;
    for (const auto& [c, edges] : bk.by_color) {
      for (Edge e : edges) {
        if (bk.coloring.color_of(e) != c)
          return fail("bucket " + std::to_string(i) +
                      " color list disagrees with the coloring");
      }
      listed += edges.size();
    }
    if (listed != static_cast<std::size_t>(bk.coloring.colored_count()))
      return fail("bucket " + std::to_string(i) + " color lists incomplete");
    for (const auto& [e, c] : bk.coloring.assignment()) {
      auto it = location_.find(e);
      if (it == location_.end() || it->second.first != i)
        return fail("bucket " + std::to_string(i) +
                    " holds an edge tracked elsewhere");
      auto want = bucket_index(it->second.second);
      if (!want || *want != i)
        return fail("tracked value of an edge lies outside its bucket");
    }
    total += bk.coloring.colored_count();
  }
  if (total != location_.size())
    return fail("tracked edge count disagrees with bucket contents");
  return true;
}

}  // namespace kec
