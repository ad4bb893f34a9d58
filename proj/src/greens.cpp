#include "gasketbvp/greens.hpp"

#include <algorithm>
#include <climits>
#include <cmath>
#include <stdexcept>

namespace gasketbvp {

namespace {

template <class Fn>
void walk_cells(int depth, std::vector<int>& addr, const Fn& fn) {
  if (static_cast<int>(addr.size()) == depth) {
    fn(addr);
    return;
  }
  for (int w = 0; w < 3; ++w) {
    addr.push_back(w);
    walk_cells(depth, addr, fn);
    addr.pop_back();
  }
}

double m0_shifted(const DyadicSequence& seq, int times) {
  return m0_truncated(times >= 1 ? shift_normalized(seq, times) : seq);
}

}  // namespace

double g_standard(int k, bool diagonal) {
  if (k < 1) throw std::out_of_range("spline level must be positive");
  return (diagonal ? 0.3 : 0.1) * std::pow(0.6, k);
}

double g_domain_diag(const DyadicSequence& seq, int l) {
  if (l < 1 || l > seq.size()) throw std::out_of_range("T level out of range");
  const double m = m0_shifted(seq, l - 1);
  return (m + m * m) / (2.0 * m + 1.0) * std::pow(0.6, seq.exponent(l - 1));
}

double g_domain_neighbor(const DyadicSequence& seq, int l) {
  if (l < 1 || l > seq.size()) throw std::out_of_range("T level out of range");
  const double m = m0_shifted(seq, l - 1);
  return m * m / (2.0 * m + 1.0) * std::pow(0.6, seq.exponent(l - 1));
}

MeshFunction modified_spline(const Domain& dom, const Word& omega) {
  const int l = omega.length();
  if (l < 1 || l >= dom.seq.size())
    throw std::invalid_argument("modified spline needs 1 <= |omega| < K");
  MeshFunction sp(*dom.mesh);
  std::vector<int> a = tilde_F(dom.seq, omega).letters;
  const int letter = a.back();
  a.back() = 0;  // companion cell F~~_omega
  std::array<double, 3> v{};
  v[static_cast<size_t>(letter)] = 1.0;
  fill_harmonic_cell(sp, a, v);
  a.back() = letter;
  fill_h0_piece(dom, sp, a, l, 0.0, 1.0);
  return sp;
}

std::map<int, MeshFunction> level_splines(const Domain& dom, int m) {
  if (m < 1 || m >= dom.seq.size())
    throw std::invalid_argument("level splines need 1 <= m < K");
  const GasketMesh& mesh = *dom.mesh;
  const int t = line_threshold(mesh, dom.seq);
  std::map<int, MeshFunction> out;
  std::vector<int> addr;
  walk_cells(dom.seq.exponent(m - 1), addr, [&](std::vector<int>& a) {
    auto p = cell_corner_coords(mesh, a);
    if (p[1][1] >= t) {  // cell inside the domain: hat pieces
      for (int j = 0; j < 3; ++j) {
        const int z = mesh.vertex_at(p[static_cast<size_t>(j)][0], p[static_cast<size_t>(j)][1]);
        if (dom.mask.role[static_cast<size_t>(z)] != VertexRole::Interior) continue;
        std::array<double, 3> v{};
        v[static_cast<size_t>(j)] = 1.0;
        fill_harmonic_cell(out.try_emplace(z, MeshFunction(mesh)).first->second, a, v);
      }
    } else if (p[0][1] > t) {  // straddling spine cell: h0 shape under its top
      const int z = mesh.vertex_at(p[0][0], p[0][1]);
      fill_h0_piece(dom, out.try_emplace(z, MeshFunction(mesh)).first->second, a, m, 0.0, 1.0);
    }
  });
  return out;
}

GreenOperator::GreenOperator(const Domain& dom, int m)
    : dom_(&dom), mesh_(dom.mesh.get()), m_(m) {
  if (m < 1 || m >= dom.seq.size())
    throw std::invalid_argument("kernel truncation needs 1 <= m < K");
  for (int l = 1; l <= m; ++l) {
    std::vector<int> letters(static_cast<size_t>(l), 1);
    for (int idx = 0; idx < (1 << l); ++idx) {
      for (int k = 0; k < l; ++k)
        letters[static_cast<size_t>(k)] = ((idx >> (l - 1 - k)) & 1) ? 2 : 1;
      Word w(letters);
      t_words_.emplace(mesh_->cell_corner(tilde_F(dom.seq, w), 0), w);
    }
  }
  build(dom.seq.exponent(m - 1), line_threshold(*mesh_, dom.seq));
}

GreenOperator::GreenOperator(const GasketMesh& mesh, int levels)
    : mesh_(&mesh), m_(levels) {
  if (levels < 1 || levels > mesh.level)
    throw std::invalid_argument("spline level beyond mesh resolution");
  build(levels, LLONG_MIN);
}

void GreenOperator::build(int top, long long t_line) {
  const GasketMesh& mesh = *mesh_;
  // hat contribution of the midpoint of edge (i, j) of the cell `a`
  auto hat = [&](const std::vector<int>& a, int i, int j, int z) {
    MeshFunction& sp = splines_.try_emplace(z, MeshFunction(mesh)).first->second;
    std::vector<int> c = a;
    c.push_back(i);
    std::array<double, 3> v{};
    v[static_cast<size_t>(j)] = 1.0;
    fill_harmonic_cell(sp, c, v);
    c.back() = j;
    v = {};
    v[static_cast<size_t>(i)] = 1.0;
    fill_harmonic_cell(sp, c, v);
  };
  for (int k = 1; k <= top; ++k) {
    const double wd = g_standard(k, true), wo = g_standard(k, false);
    int l = 0;
    double td = 0.0, tn = 0.0;
    if (dom_) {
      const auto& e = dom_->seq.exponents();
      auto it = std::find(e.begin(), e.end(), k);
      if (it != e.end()) {
        l = static_cast<int>(it - e.begin()) + 1;
        td = g_domain_diag(dom_->seq, l);
        tn = g_domain_neighbor(dom_->seq, l);
      }
    }
    std::vector<int> addr;
    walk_cells(k - 1, addr, [&](std::vector<int>& a) {
      auto p = cell_corner_coords(mesh, a);
      auto mid = [&](int i, int j) {
        return mesh.vertex_at((p[static_cast<size_t>(i)][0] + p[static_cast<size_t>(j)][0]) / 2,
                              (p[static_cast<size_t>(i)][1] + p[static_cast<size_t>(j)][1]) / 2);
      };
      if (p[1][1] >= t_line) {
        const int zs[3] = {mid(0, 1), mid(0, 2), mid(1, 2)};
        hat(a, 0, 1, zs[0]);
        hat(a, 0, 2, zs[1]);
        hat(a, 1, 2, zs[2]);
        for (int z : zs) terms_.push_back({z, z, k, 0, wd});
        for (int i = 0; i < 3; ++i)
          for (int j = 0; j < 3; ++j)
            if (i != j) terms_.push_back({zs[i], zs[j], k, 0, wo});
      } else if (p[0][1] > t_line && l > 0) {
        // straddling spine cell at an exponent level: T_x^l pair
        const int z1 = mid(0, 1), z2 = mid(0, 2);
        for (int letter : {1, 2}) {
          const int z = letter == 1 ? z1 : z2;
          MeshFunction& sp = splines_.try_emplace(z, MeshFunction(mesh)).first->second;
          std::vector<int> c = a;
          c.push_back(0);
          std::array<double, 3> v{};
          v[static_cast<size_t>(letter)] = 1.0;
          fill_harmonic_cell(sp, c, v);
          c.back() = letter;
          fill_h0_piece(*dom_, sp, c, l, 0.0, 1.0);
        }
        terms_.push_back({z1, z1, k, l, td});
        terms_.push_back({z2, z2, k, l, td});
        terms_.push_back({z1, z2, k, l, tn});
        terms_.push_back({z2, z1, k, l, tn});
      }
    });
  }
}

double GreenOperator::kernel(int s, int t) const {
  double sum = 0.0;
  for (const auto& tm : terms_) sum += tm.weight * splines_.at(tm.z)[s] * splines_.at(tm.zp)[t];
  return sum;
}

MeshFunction GreenOperator::kernel_slice(int t) const {
  MeshFunction u(*mesh_);
  for (const auto& tm : terms_) {
    const double c = tm.weight * splines_.at(tm.zp)[t];
    if (c == 0.0) continue;
    const MeshFunction& sp = splines_.at(tm.z);
    for (int v = 0; v < mesh_->vertex_count(); ++v) u[v] += c * sp[v];
  }
  return u;
}

MeshFunction GreenOperator::solve(const MeshFunction& forcing) const {
  const DomainMask* mask = dom_ ? &dom_->mask : nullptr;
  std::map<int, double> integral;
  MeshFunction prod(*mesh_);
  for (const auto& [z, sp] : splines_) {
    for (int v = 0; v < mesh_->vertex_count(); ++v) prod[v] = sp[v] * forcing[v];
    integral[z] = integrate(prod, mask);
  }
  std::map<int, double> coef;
  for (const auto& tm : terms_) coef[tm.z] += tm.weight * integral.at(tm.zp);
  MeshFunction u(*mesh_);
  for (const auto& [z, c] : coef) {
    if (c == 0.0) continue;
    const MeshFunction& sp = splines_.at(z);
    for (int v = 0; v < mesh_->vertex_count(); ++v) u[v] += c * sp[v];
  }
  return u;
}

FluxBoundReport solution_flux_bound(const GreenOperator& op, const MeshFunction& forcing) {
  const Domain* dom = op.domain();
  if (!dom) throw std::invalid_argument("flux bound needs a domain kernel");
  const DyadicSequence& seq = dom->seq;
  const GasketMesh& mesh = *dom->mesh;
  const int m = op.truncation();
  const int n = 1 << m;
  std::vector<std::vector<double>> level(static_cast<size_t>(m),
                                         std::vector<double>(static_cast<size_t>(n), 0.0));
  std::vector<double> dn(static_cast<size_t>(m) + 1, 0.0);
  for (int l = 1; l <= m; ++l)
    dn[static_cast<size_t>(l)] = -2.0 * std::pow(5.0 / 3.0, seq.exponent(l)) *
                                 (1.0 - m0_shifted(seq, l)) * std::pow(2.0, l);
  std::map<int, double> integral;
  MeshFunction prod(mesh);
  auto integ = [&](int z) {
    auto it = integral.find(z);
    if (it != integral.end()) return it->second;
    const MeshFunction& sp = op.spline(z);
    for (int v = 0; v < mesh.vertex_count(); ++v) prod[v] = sp[v] * forcing[v];
    return integral[z] = integrate(prod, &dom->mask);
  };
  for (const auto& tm : op.terms()) {
    if (tm.t_level == 0) continue;
    const int l = tm.t_level;
    const Word& w = op.t_words().at(tm.z);
    const double c = tm.weight * dn[static_cast<size_t>(l)] * integ(tm.zp);
    int idx = 0;
    for (int ch : w.letters) idx = (idx << 1) | (ch == 2 ? 1 : 0);
    const int span = 1 << (m - l);
    for (int i = idx * span; i < (idx + 1) * span; ++i)
      level[static_cast<size_t>(l) - 1][static_cast<size_t>(i)] += c;
  }
  double fmax = 0.0;
  for (int v = 0; v < mesh.vertex_count(); ++v)
    if (dom->mask.in_domain(v)) fmax = std::max(fmax, std::fabs(forcing[v]));
  FluxBoundReport rep;
  rep.flux.assign(static_cast<size_t>(n), 0.0);
  for (int l = 1; l <= m; ++l) {
    double sup = 0.0;
    for (int i = 0; i < n; ++i) {
      sup = std::max(sup, std::fabs(level[static_cast<size_t>(l) - 1][static_cast<size_t>(i)]));
      rep.flux[static_cast<size_t>(i)] += level[static_cast<size_t>(l) - 1][static_cast<size_t>(i)];
    }
    rep.level_sup.push_back(sup);
    rep.level_bound.push_back(std::pow(2.0, l) / std::pow(3.0, seq.exponent(l - 1)) * fmax);
  }
  return rep;
}

}  // namespace gasketbvp
