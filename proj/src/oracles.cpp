#include "macscope/oracles.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

#include "macscope/builders.hpp"
#include "macscope/parser.hpp"

namespace macscope {

Int bilinear_fiber_count(std::uint32_t q, std::uint32_t dim_v,
                         std::uint32_t m) {
  if (m < 1 || m > dim_v)
    throw std::invalid_argument("bilinear_fiber_count: need 1 <= m <= dimV");
  return ipow(Int(q), dim_v - m);
}

namespace {

struct VsView {
  const FiniteStructure* m;
  GaloisField gf;
  std::uint32_t dim;
  std::uint64_t vsize;
  int f_beta;

  explicit VsView(const FiniteStructure& vs)
      : m(&vs),
        gf(static_cast<std::uint32_t>(vs.carrier(vs.sig().sort_index("F")))),
        dim(static_cast<std::uint32_t>(
            vs.declared_value("n").convert_to<std::uint64_t>())),
        vsize(vs.carrier(vs.sig().sort_index("V"))),
        f_beta(vs.sig().symbol_index("beta")) {
    if (f_beta < 0)
      throw std::invalid_argument("structure carries no symplectic form");
  }

  std::uint32_t beta(Elem x, Elem y) const {
    std::array<Elem, 2> args{x, y};
    return m->fun(f_beta, args);
  }

  std::vector<std::uint32_t> coords(Elem v) const {
    std::vector<std::uint32_t> out(dim);
    for (std::uint32_t i = 0; i < dim; ++i) {
      out[i] = v % gf.q();
      v /= gf.q();
    }
    return out;
  }

  bool independent(const std::vector<Elem>& vectors) const {
    // Row reduction over GF(q).
    std::vector<std::vector<std::uint32_t>> rows;
    for (Elem v : vectors) rows.push_back(coords(v));
    std::uint32_t rank = 0;
    for (std::uint32_t col = 0; col < dim && rank < rows.size(); ++col) {
      std::uint32_t pivot = rank;
      while (pivot < rows.size() && rows[pivot][col] == 0) ++pivot;
      if (pivot == rows.size()) continue;
      std::swap(rows[pivot], rows[rank]);
      std::uint32_t inv = gf.pow(rows[rank][col], gf.q() - 2);
      for (std::uint32_t i = 0; i < rows.size(); ++i) {
        if (i == rank || rows[i][col] == 0) continue;
        std::uint32_t factor = gf.mul(rows[i][col], inv);
        for (std::uint32_t j = 0; j < dim; ++j)
          rows[i][j] = gf.sub(rows[i][j], gf.mul(factor, rows[rank][j]));
      }
      ++rank;
    }
    return rank == vectors.size();
  }
};

}  // namespace

FiberInstance bilinear_fiber_instance(const FiniteStructure& vs,
                                      const std::vector<Elem>& vectors,
                                      const std::vector<Elem>& rhs) {
  if (vectors.size() != rhs.size() || vectors.empty())
    throw std::invalid_argument("bilinear_fiber_instance: tuple shape");
  VsView view(vs);
  FiberInstance out;
  out.independent = view.independent(vectors);
  for (std::uint64_t x = 0; x < view.vsize; ++x) {
    bool all = true;
    for (std::size_t i = 0; i < vectors.size() && all; ++i)
      all = view.beta(static_cast<Elem>(x), vectors[i]) == rhs[i];
    if (all) ++out.brute;
  }
  if (out.independent)
    out.formula = bilinear_fiber_count(
        view.gf.q(), view.dim, static_cast<std::uint32_t>(vectors.size()));
  return out;
}

FiberCheckReport bilinear_fiber_check(const FiniteStructure& vs,
                                      std::uint32_t m,
                                      std::uint64_t tuple_budget,
                                      std::uint64_t samples) {
  VsView view(vs);
  if (m < 1 || m > view.dim)
    throw std::invalid_argument("bilinear_fiber_check: need 1 <= m <= dimV");
  FiberCheckReport report;
  report.q = view.gf.q();
  report.dim_v = view.dim;
  report.m = m;

  Int formula = bilinear_fiber_count(view.gf.q(), view.dim, m);
  auto check_one = [&](const std::vector<Elem>& vectors,
                       const std::vector<Elem>& rhs) {
    if (!view.independent(vectors)) {
      ++report.dependent_skipped;
      return;
    }
    std::uint64_t brute = 0;
    for (std::uint64_t x = 0; x < view.vsize; ++x) {
      bool all = true;
      for (std::size_t i = 0; i < vectors.size() && all; ++i)
        all = view.beta(static_cast<Elem>(x), vectors[i]) == rhs[i];
      if (all) ++brute;
    }
    ++report.tuples_checked;
    if (Int(brute) != formula) ++report.mismatches;
  };

  // Full tuple space: |V|^m * q^m.
  long double space = 1.0L;
  for (std::uint32_t i = 0; i < m; ++i)
    space *= static_cast<long double>(view.vsize) * view.gf.q();
  if (space <= static_cast<long double>(tuple_budget)) {
    report.exhaustive = true;
    std::vector<Elem> vectors(m, 0), rhs(m, 0);
    std::uint64_t vspace = 1, aspace = 1;
    for (std::uint32_t i = 0; i < m; ++i) {
      vspace *= view.vsize;
      aspace *= view.gf.q();
    }
    for (std::uint64_t vt = 0; vt < vspace; ++vt) {
      std::uint64_t rest = vt;
      for (std::uint32_t i = 0; i < m; ++i) {
        vectors[i] = static_cast<Elem>(rest % view.vsize);
        rest /= view.vsize;
      }
      if (!view.independent(vectors)) {
        report.dependent_skipped += aspace;
        continue;
      }
      for (std::uint64_t at = 0; at < aspace; ++at) {
        std::uint64_t arest = at;
        for (std::uint32_t i = 0; i < m; ++i) {
          rhs[i] = static_cast<Elem>(arest % view.gf.q());
          arest /= view.gf.q();
        }
        std::uint64_t brute = 0;
        for (std::uint64_t x = 0; x < view.vsize; ++x) {
          bool all = true;
          for (std::uint32_t i = 0; i < m && all; ++i)
            all = view.beta(static_cast<Elem>(x), vectors[i]) == rhs[i];
          if (all) ++brute;
        }
        ++report.tuples_checked;
        if (Int(brute) != formula) ++report.mismatches;
      }
    }
  } else {
    report.exhaustive = false;
    std::mt19937_64 rng(0x9e3779b97f4a7c15ull ^ (view.vsize * 31 + m));
    std::uniform_int_distribution<std::uint64_t> pick_v(0, view.vsize - 1);
    std::uniform_int_distribution<std::uint32_t> pick_a(0, view.gf.q() - 1);
    std::uint64_t done = 0;
    while (done < samples) {
      std::vector<Elem> vectors(m), rhs(m);
      for (std::uint32_t i = 0; i < m; ++i) {
        vectors[i] = static_cast<Elem>(pick_v(rng));
        rhs[i] = static_cast<Elem>(pick_a(rng));
      }
      std::uint64_t before = report.tuples_checked;
      check_one(vectors, rhs);
      if (report.tuples_checked > before) ++done;
    }
  }
  return report;
}

Int sdk_eval(const std::map<std::pair<int, int>, Int>& c, const Int& p,
             std::uint32_t m, std::uint32_t n) {
  Int total = 0;
  for (const auto& [ij, coeff] : c) {
    if (coeff == 0) continue;
    long long i = ij.first;
    long long j = ij.second;
    long long inj = i * static_cast<long long>(n) + j;
    if (inj < 0)
      throw std::invalid_argument(
          "sdk_eval: nonzero coefficient with i*n + j < 0");
    total += coeff * ipow(p, static_cast<unsigned long>(m) *
                                 static_cast<unsigned long>(inj));
  }
  return total;
}

double paley_bound(std::uint32_t q, std::uint32_t m) {
  double c = 0.5 * (static_cast<double>(m) - 2.0 + std::pow(2.0, 1.0 - static_cast<double>(m)));
  return c * std::sqrt(static_cast<double>(q)) + m / 2.0;
}

bool paley_inequality_holds(std::uint64_t v, std::uint32_t q,
                            std::uint32_t m) {
  if (m < 1) throw std::invalid_argument("paley_inequality_holds: m >= 1");
  // lhs = |v - q/2^m|; bound = c*sqrt(q) + m/2 with c = (m-2+2^(1-m))/2.
  Rat lhs = Rat(v) - Rat(Int(q), ipow(Int(2), m));
  if (lhs < 0) lhs = -lhs;
  Rat a = lhs - Rat(m, 2);
  if (a <= 0) return true;
  Rat c = (Rat(m) - 2 + Rat(Int(2), ipow(Int(2), m))) / 2;
  if (c < 0) return false;  // a > 0 but the radical term is negative
  return a * a <= c * c * Rat(q);
}

PaleyCheckReport paley_check(std::uint32_t q, std::uint32_t m_max) {
  if (m_max < 1 || m_max > 4)
    throw std::invalid_argument("paley_check: m_max in 1..4");
  FiniteStructure graph = make_paley(q);
  int r_adj = graph.sig().symbol_index("adj");
  auto adj = [&](Elem a, Elem b) {
    std::array<Elem, 2> args{a, b};
    return graph.rel(r_adj, args);
  };

  PaleyCheckReport report;
  report.q = q;
  report.m_max = m_max;
  report.min_slack = std::numeric_limits<double>::infinity();
  report.max_slack = -std::numeric_limits<double>::infinity();

  // Subsets of size t in lexicographic combination order.
  std::vector<Elem> subset(m_max);
  for (std::uint32_t t = 1; t <= m_max; ++t) {
    std::vector<std::uint32_t> idx(t);
    for (std::uint32_t i = 0; i < t; ++i) idx[i] = i;
    while (true) {
      for (std::uint32_t mask = 0; mask < (1u << t); ++mask) {
        // mask bit set: vertex goes to U; else W.
        std::uint64_t v_count = 0;
        for (Elem x = 0; x < q; ++x) {
          bool in_t = false;
          for (std::uint32_t i = 0; i < t; ++i)
            if (idx[i] == x) in_t = true;
          if (in_t) continue;
          bool good = true;
          for (std::uint32_t i = 0; i < t && good; ++i) {
            bool wanted_adjacent = (mask >> i) & 1;
            good = adj(x, static_cast<Elem>(idx[i])) == wanted_adjacent;
          }
          if (good) ++v_count;
        }
        ++report.instances;
        if (!paley_inequality_holds(v_count, q, t)) ++report.violations;
        double lhs = std::fabs(static_cast<double>(v_count) -
                               static_cast<double>(q) / std::pow(2.0, t));
        double slack = paley_bound(q, t) - lhs;
        report.min_slack = std::min(report.min_slack, slack);
        report.max_slack = std::max(report.max_slack, slack);
      }
      // next combination
      std::int32_t i = static_cast<std::int32_t>(t) - 1;
      while (i >= 0 && idx[i] == q - t + i) --i;
      if (i < 0) break;
      ++idx[i];
      for (std::uint32_t j = i + 1; j < t; ++j) idx[j] = idx[j - 1] + 1;
    }
  }
  return report;
}

Int gl_centralizer_size(std::uint32_t n, std::uint32_t q, std::uint32_t r) {
  if (r > n) throw std::invalid_argument("gl_centralizer_size: 0 <= r <= n");
  return ipow(Int(q), r * r + (n - r) * (n - r));
}

std::uint64_t gl_centralizer_bruteforce(const FiniteStructure& gl,
                                        std::uint32_t r) {
  int c_ar = gl.sig().symbol_index("A" + std::to_string(r));
  if (c_ar < 0) throw std::invalid_argument("gl structure lacks A_r constant");
  int f_bracket = gl.sig().symbol_index("bracket");
  Elem a_r = gl.constant(c_ar);
  Elem zero = gl.constant(gl.sig().symbol_index("A0"));
  std::uint64_t carrier = gl.carrier(0);
  std::uint64_t count = 0;
  for (std::uint64_t x = 0; x < carrier; ++x) {
    std::array<Elem, 2> args{a_r, static_cast<Elem>(x)};
    if (gl.fun(f_bracket, args) == zero) ++count;
  }
  return count;
}

std::vector<std::uint32_t> primitive_roots(std::uint32_t q) {
  std::vector<std::uint32_t> out;
  if (q < 3) return out;
  auto order = [q](std::uint32_t a) {
    std::uint64_t x = a % q;
    if (x == 0) return std::uint32_t{0};
    std::uint64_t acc = x;
    std::uint32_t k = 1;
    while (acc != 1) {
      acc = acc * x % q;
      ++k;
    }
    return k;
  };
  for (std::uint32_t a = 2; a < q; ++a)
    if (order(a) == q - 1) out.push_back(a);
  return out;
}

DlogOrderReport dlog_order(std::uint32_t q, std::uint32_t a) {
  GaloisField gf(q);
  if (gf.degree() != 1)
    throw std::invalid_argument("dlog_order: q must be prime");
  if (q > 4096) throw std::invalid_argument("dlog_order: q too large");
  // a must generate the multiplicative group.
  {
    std::uint64_t acc = a % q;
    std::uint32_t k = 1;
    if (acc == 0) throw std::invalid_argument("dlog_order: base is zero");
    while (acc != 1) {
      acc = acc * a % q;
      ++k;
    }
    if (k != q - 1)
      throw std::invalid_argument("dlog_order: base is not a primitive root");
  }

  // log[a^l] = l for l in 0..q-2.
  std::vector<std::uint32_t> log(q, 0);
  std::uint64_t power = 1;
  for (std::uint32_t l = 0; l + 1 < q; ++l) {
    log[power] = l;
    power = power * a % q;
  }

  // oplus(x, y) = log(a^x * a^y) on residues {0..q-2}, landing in F_q;
  // Delta holds where oplus agrees with field addition.
  auto sig = std::make_shared<Signature>();
  int sf = sig->add_sort("F");
  int r_delta = sig->add_relation("delta", {sf, sf});
  FiniteStructure m(sig, {q});
  auto oplus = [&](std::uint32_t x, std::uint32_t y) {
    std::uint64_t ax = 1, ay = 1;
    // a^x and a^y by fast exponentiation over F_q
    std::uint64_t base = a % q;
    std::uint32_t e = x;
    while (e) {
      if (e & 1) ax = ax * base % q;
      base = base * base % q;
      e >>= 1;
    }
    base = a % q;
    e = y;
    while (e) {
      if (e & 1) ay = ay * base % q;
      base = base * base % q;
      e >>= 1;
    }
    return log[ax * ay % q];
  };
  m.define_relation(r_delta, [&](std::span<const Elem> args) {
    std::uint32_t x = args[0], y = args[1];
    if (x > q - 2 || y > q - 2) return false;
    return oplus(x, y) == (x + y) % q;
  });

  Formula phi = parse_formula("exists c:F. delta(a,c) & !delta(b,c)",
                              sig, {{"a", "F"}, {"b", "F"}});
  Evaluator ev(m, phi);
  int slot_a = phi.free_slot("a");
  int slot_b = phi.free_slot("b");

  DlogOrderReport report;
  report.q = q;
  report.base = a;
  report.less.assign(q, std::vector<bool>(q, false));
  std::vector<Elem> slots(phi.vars().size(), 0);
  for (Elem x = 0; x < q; ++x) {
    for (Elem y = 0; y < q; ++y) {
      slots[slot_a] = x;
      slots[slot_b] = y;
      report.less[x][y] = ev.eval_slots(slots);
    }
  }
  // 0 is prepended as the least element.
  for (Elem y = 0; y < q; ++y) {
    report.less[0][y] = y != 0;
    report.less[y][0] = false;
  }

  report.verified = true;
  for (Elem x = 0; x < q && report.verified; ++x)
    for (Elem y = 0; y < q && report.verified; ++y)
      if (report.less[x][y] != (x < y)) report.verified = false;
  return report;
}

VsDemoReport vs_product_count_demo(const std::vector<std::uint32_t>& qs,
                                   const std::vector<std::uint32_t>& dims) {
  if (qs.empty() || dims.empty())
    throw std::invalid_argument("vs_product_count_demo: empty family");
  VsDemoReport report;
  std::vector<FiniteStructure> family;
  for (std::uint32_t q : qs)
    for (std::uint32_t d1 : dims)
      for (std::uint32_t d2 : dims) family.push_back(make_vs_family(q, {d1, d2}));
  std::vector<const FiniteStructure*> cls;
  for (const auto& m : family) {
    cls.push_back(&m);
    report.structures.push_back(m.name());
  }
  SizeTable sizes = size_table_from_declared(cls, {"q", "V1", "V2"});

  struct Demo {
    std::string text;
    std::vector<VarSpec> objects;
    std::vector<std::vector<Rat>> basis;
  };
  auto e = [](int a, int b, int c) {
    return std::vector<Rat>{Rat(a), Rat(b), Rat(c)};
  };
  std::vector<Demo> demos = {
      {"x = x", {VarSpec("x", "V1")}, {e(0, 1, 0), e(0, 0, 0)}},
      {"!(x1 = zerov1) & !(exists l:F. x2 = smul1(l, x1))",
       {VarSpec("x1"), VarSpec("x2")},
       {e(0, 2, 0), e(1, 1, 0), e(0, 1, 0), e(1, 0, 0), e(0, 0, 0)}},
      {"!(x = zero)", {VarSpec("x", "F")}, {e(1, 0, 0), e(0, 0, 0)}},
  };

  for (const auto& demo : demos) {
    Formula phi = parse_formula(demo.text, family.front().sig_ptr());
    auto census = census_run(cls, phi, demo.objects, {});
    auto fit = fit_exact(census.tables, sizes, demo.basis);
    VsDemoEntry entry;
    entry.formula = demo.text;
    for (const auto& o : demo.objects)
      entry.object_vars += (entry.object_vars.empty() ? "" : ",") + o.name;
    entry.exact = true;
    for (const auto& cls_fit : fit.classes) {
      if (!entry.fitted.empty()) entry.fitted += "; ";
      entry.fitted += cls_fit.name + ": " + cls_fit.h.to_string();
      if (cls_fit.verdict != "MEC-exact") entry.exact = false;
    }
    report.entries.push_back(std::move(entry));
  }
  return report;
}

}  // namespace macscope
