#include "bdiv/divisor.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "bdiv/errors.hpp"

namespace bdiv {

namespace {

void check_region(Region region, cplx p) {
  const double r = std::abs(p);
  bool ok = std::isfinite(r);
  switch (region) {
    case Region::interior: ok = ok && r < 1.0; break;
    case Region::circle: ok = ok && std::abs(r - 1.0) <= kCircleTol; break;
    case Region::closed: ok = ok && r <= 1.0 + kCircleTol; break;
  }
  if (!ok) {
    throw PreconditionError("point (" + std::to_string(p.real()) + ", " +
                            std::to_string(p.imag()) + ") outside region " +
                            region_name(region));
  }
}

bool canonical_less(const Atom& a, const Atom& b) {
  if (a.point.real() != b.point.real()) return a.point.real() < b.point.real();
  return a.point.imag() < b.point.imag();
}

// Bipartite perfect matching using only pairs within radius (Kuhn).
bool feasible(std::span<const cplx> a, std::span<const cplx> b, double radius) {
  const std::size_t n = a.size();
  std::vector<int> match_b(n, -1);
  std::vector<char> seen(n);
  auto augment = [&](auto&& self, std::size_t i) -> bool {
    for (std::size_t j = 0; j < n; ++j) {
      if (seen[j] || std::abs(a[i] - b[j]) > radius) continue;
      seen[j] = 1;
      if (match_b[j] < 0 || self(self, static_cast<std::size_t>(match_b[j]))) {
        match_b[j] = static_cast<int>(i);
        return true;
      }
    }
    return false;
  };
  for (std::size_t i = 0; i < n; ++i) {
    std::fill(seen.begin(), seen.end(), 0);
    if (!augment(augment, i)) return false;
  }
  return true;
}

}  // namespace

const char* region_name(Region r) {
  switch (r) {
    case Region::interior: return "interior";
    case Region::circle: return "circle";
    case Region::closed: return "closed";
  }
  return "?";
}

Divisor::Divisor(Region region, std::vector<Atom> atoms) : region_(region) {
  for (auto& a : atoms) {
    if (a.mult < 1) throw PreconditionError("atom multiplicity must be >= 1");
    check_region(region, a.point);
  }
  // Single-linkage merging until no two atoms are within kMergeTol.
  bool merged = true;
  while (merged) {
    merged = false;
    for (std::size_t i = 0; i < atoms.size() && !merged; ++i) {
      for (std::size_t j = i + 1; j < atoms.size(); ++j) {
        if (std::abs(atoms[i].point - atoms[j].point) >= kMergeTol) continue;
        const int m = atoms[i].mult + atoms[j].mult;
        cplx c = (static_cast<double>(atoms[i].mult) * atoms[i].point +
                  static_cast<double>(atoms[j].mult) * atoms[j].point) /
                 static_cast<double>(m);
        atoms[i] = Atom{c, m};
        atoms.erase(atoms.begin() + static_cast<std::ptrdiff_t>(j));
        merged = true;
        break;
      }
    }
  }
  std::sort(atoms.begin(), atoms.end(), canonical_less);
  atoms_ = std::move(atoms);
}

Divisor Divisor::from_points(Region region, std::span<const cplx> points) {
  std::vector<Atom> atoms;
  atoms.reserve(points.size());
  for (const auto& p : points) atoms.push_back({p, 1});
  return Divisor(region, std::move(atoms));
}

int Divisor::degree() const {
  return std::accumulate(atoms_.begin(), atoms_.end(), 0,
                         [](int s, const Atom& a) { return s + a.mult; });
}

bool Divisor::is_simple() const {
  return std::all_of(atoms_.begin(), atoms_.end(),
                     [](const Atom& a) { return a.mult == 1; });
}

int Divisor::multiplicity_at(cplx p, double tol) const {
  for (const auto& a : atoms_) {
    if (std::abs(a.point - p) < tol) return a.mult;
  }
  return 0;
}

std::vector<cplx> Divisor::expanded() const {
  std::vector<cplx> out;
  for (const auto& a : atoms_) out.insert(out.end(), a.mult, a.point);
  return out;
}

Divisor add(const Divisor& a, const Divisor& b) {
  Region r = a.region() == b.region() ? a.region() : Region::closed;
  if (a.empty()) r = b.region();
  if (b.empty()) r = a.region();
  if (a.empty() && b.empty()) r = a.region();
  std::vector<Atom> atoms = a.atoms();
  atoms.insert(atoms.end(), b.atoms().begin(), b.atoms().end());
  return Divisor(r, std::move(atoms));
}

double matching_distance(std::span<const cplx> a, std::span<const cplx> b) {
  if (a.size() != b.size()) {
    throw PreconditionError("matching_distance: degree mismatch (" +
                            std::to_string(a.size()) + " vs " +
                            std::to_string(b.size()) + ")");
  }
  if (a.empty()) return 0.0;
  std::vector<double> radii;
  radii.reserve(a.size() * b.size());
  for (const auto& x : a)
    for (const auto& y : b) radii.push_back(std::abs(x - y));
  std::sort(radii.begin(), radii.end());
  radii.erase(std::unique(radii.begin(), radii.end()), radii.end());
  // smallest candidate radius admitting a perfect matching
  std::size_t lo = 0, hi = radii.size() - 1;
  while (lo < hi) {
    const std::size_t mid = (lo + hi) / 2;
    if (feasible(a, b, radii[mid])) hi = mid;
    else lo = mid + 1;
  }
  return radii[lo];
}

double matching_distance(const Divisor& a, const Divisor& b) {
  const auto xa = a.expanded();
  const auto xb = b.expanded();
  return matching_distance(std::span<const cplx>(xa), std::span<const cplx>(xb));
}

BoundarySplit split_boundary(const Divisor& d) {
  std::vector<Atom> inner, outer;
  std::vector<cplx> ambiguous;
  for (const auto& a : d.atoms()) {
    const double r = std::abs(a.point);
    if (std::abs(r - 1.0) <= kCircleTol) {
      outer.push_back(a);
    } else {
      if (r >= 1.0 - kAmbiguousBand) ambiguous.push_back(a.point);
      inner.push_back(a);
    }
  }
  return {Divisor(Region::interior, std::move(inner)),
          Divisor(Region::circle, std::move(outer)), std::move(ambiguous)};
}

std::optional<Divisor> sequence_limit(std::span<const Divisor> seq, double tol,
                                      int window) {
  if (seq.empty() || window < 1) return std::nullopt;
  const int deg = seq.front().degree();
  for (const auto& d : seq) {
    if (d.degree() != deg) {
      throw PreconditionError("sequence_limit: terms of different degree");
    }
  }
  if (static_cast<int>(seq.size()) < window) return std::nullopt;
  const auto tail = seq.subspan(seq.size() - static_cast<std::size_t>(window));
  for (std::size_t i = 0; i < tail.size(); ++i)
    for (std::size_t j = i + 1; j < tail.size(); ++j)
      if (matching_distance(tail[i], tail[j]) > tol) return std::nullopt;

  std::vector<Atom> atoms = tail.back().atoms();
  for (auto& a : atoms) {
    const double r = std::abs(a.point);
    if (r >= 1.0 - tol) a.point /= r;
  }
  return Divisor(Region::closed, std::move(atoms));
}

}  // namespace bdiv
