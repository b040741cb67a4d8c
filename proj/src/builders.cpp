#include "macscope/builders.hpp"

#include <algorithm>
#include <array>
#include <numeric>
#include <random>
#include <set>
#include <stdexcept>
#include <string>

namespace macscope {

namespace {

using Poly = std::vector<std::uint32_t>;  // little-endian over F_p

void poly_trim(Poly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

// Remainder of f modulo monic g.
Poly poly_mod(Poly f, const Poly& g, std::uint32_t p) {
  poly_trim(f);
  while (f.size() >= g.size()) {
    std::uint32_t lead = f.back();
    std::size_t shift = f.size() - g.size();
    for (std::size_t i = 0; i < g.size(); ++i) {
      std::uint64_t sub = static_cast<std::uint64_t>(lead) * g[i] % p;
      f[shift + i] = static_cast<std::uint32_t>((f[shift + i] + p - sub) % p);
    }
    poly_trim(f);
  }
  return f;
}

Poly poly_mul(const Poly& a, const Poly& b, std::uint32_t p) {
  if (a.empty() || b.empty()) return {};
  Poly out(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j)
      out[i + j] = static_cast<std::uint32_t>(
          (out[i + j] + static_cast<std::uint64_t>(a[i]) * b[j]) % p);
  return out;
}

Poly decode_poly(std::uint32_t idx, std::uint32_t p, std::uint32_t len) {
  Poly f(len);
  for (std::uint32_t i = 0; i < len; ++i) {
    f[i] = idx % p;
    idx /= p;
  }
  poly_trim(f);
  return f;
}

std::uint32_t encode_poly(const Poly& f, std::uint32_t p) {
  std::uint32_t idx = 0;
  for (std::size_t i = f.size(); i-- > 0;) idx = idx * p + f[i];
  return idx;
}

// Least monic irreducible of degree e: sieve by trial division against the
// collected irreducibles of degree <= d/2. Only degrees that can divide a
// degree-e candidate are sieved.
Poly least_irreducible(std::uint32_t p, std::uint32_t e) {
  std::vector<std::vector<Poly>> irred_by_deg(e + 1);
  for (std::uint32_t d = 1; d <= e; ++d) {
    if (d != e && 2 * d > e) continue;
    std::uint64_t count = 1;
    for (std::uint32_t i = 0; i < d; ++i) count *= p;
    for (std::uint64_t low = 0; low < count; ++low) {
      Poly f = decode_poly(static_cast<std::uint32_t>(low), p, d);
      f.resize(d + 1, 0);
      f[d] = 1;
      bool reducible = false;
      for (std::uint32_t dd = 1; !reducible && 2 * dd <= d; ++dd)
        for (const Poly& g : irred_by_deg[dd])
          if (poly_mod(f, g, p).empty()) {
            reducible = true;
            break;
          }
      if (!reducible) {
        if (d == e) return f;
        irred_by_deg[d].push_back(std::move(f));
      }
    }
  }
  throw std::logic_error("no irreducible polynomial found");
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

}  // namespace

bool GaloisField::is_prime_power(std::uint32_t q, std::uint32_t* p_out,
                                 std::uint32_t* e_out) {
  if (q < 2) return false;
  std::uint32_t p = q;
  for (std::uint32_t d = 2; d * d <= q; ++d) {
    if (q % d == 0) {
      p = d;
      break;
    }
  }
  if (!is_prime(p)) return false;
  std::uint32_t e = 0;
  std::uint32_t rest = q;
  while (rest % p == 0) {
    rest /= p;
    ++e;
  }
  if (rest != 1) return false;
  if (p_out) *p_out = p;
  if (e_out) *e_out = e;
  return true;
}

GaloisField::GaloisField(std::uint32_t q) : q_(q) {
  if (!is_prime_power(q, &p_, &e_))
    throw std::invalid_argument("GaloisField: " + std::to_string(q) +
                                " is not a prime power");
  if (e_ > 1) modulus_ = least_irreducible(p_, e_);
}

std::uint32_t GaloisField::add(std::uint32_t a, std::uint32_t b) const {
  if (e_ == 1) return (a + b) % p_;
  std::uint32_t out = 0, mult = 1;
  for (std::uint32_t i = 0; i < e_; ++i) {
    out += (a % p_ + b % p_) % p_ * mult;
    a /= p_;
    b /= p_;
    mult *= p_;
  }
  return out;
}

std::uint32_t GaloisField::neg(std::uint32_t a) const {
  if (e_ == 1) return (p_ - a % p_) % p_;
  std::uint32_t out = 0, mult = 1;
  for (std::uint32_t i = 0; i < e_; ++i) {
    out += (p_ - a % p_) % p_ * mult;
    a /= p_;
    mult *= p_;
  }
  return out;
}

std::uint32_t GaloisField::sub(std::uint32_t a, std::uint32_t b) const {
  return add(a, neg(b));
}

std::uint32_t GaloisField::mul(std::uint32_t a, std::uint32_t b) const {
  if (e_ == 1)
    return static_cast<std::uint32_t>(
        static_cast<std::uint64_t>(a) * b % p_);
  Poly fa = decode_poly(a, p_, e_);
  Poly fb = decode_poly(b, p_, e_);
  Poly prod = poly_mod(poly_mul(fa, fb, p_), modulus_, p_);
  return encode_poly(prod, p_);
}

std::uint32_t GaloisField::pow(std::uint32_t a, std::uint64_t e) const {
  std::uint32_t result = 1;
  while (e > 0) {
    if (e & 1) result = mul(result, a);
    a = mul(a, a);
    e >>= 1;
  }
  return result;
}

namespace {

void verify_field_axioms(const GaloisField& gf) {
  std::uint32_t q = gf.q();
  std::vector<std::array<std::uint32_t, 3>> triples;
  if (q <= 64) {
    for (std::uint32_t a = 0; a < q; ++a)
      for (std::uint32_t b = 0; b < q; ++b)
        for (std::uint32_t c = 0; c < q; ++c) triples.push_back({a, b, c});
  } else {
    std::mt19937_64 rng(q * 2654435761u);
    std::uniform_int_distribution<std::uint32_t> pick(0, q - 1);
    for (int i = 0; i < 5000; ++i)
      triples.push_back({pick(rng), pick(rng), pick(rng)});
  }
  for (const auto& [a, b, c] : triples) {
    if (gf.add(gf.add(a, b), c) != gf.add(a, gf.add(b, c)) ||
        gf.mul(gf.mul(a, b), c) != gf.mul(a, gf.mul(b, c)) ||
        gf.mul(a, gf.add(b, c)) != gf.add(gf.mul(a, b), gf.mul(a, c)) ||
        gf.add(a, b) != gf.add(b, a) || gf.mul(a, b) != gf.mul(b, a))
      throw std::logic_error("field axiom check failed");
  }
  for (std::uint32_t a = 0; a < std::min<std::uint32_t>(q, 4096); ++a) {
    if (gf.add(a, 0) != a || gf.mul(a, 1) != a ||
        gf.add(a, gf.neg(a)) != 0)
      throw std::logic_error("field identity check failed");
    if (a != 0 && gf.pow(a, q - 1) != 1)
      throw std::logic_error("field unit group check failed");
  }
}

}  // namespace

FiniteStructure make_field(std::uint32_t q) {
  if (q > (1u << 16))
    throw std::invalid_argument("make_field: q exceeds 2^16");
  GaloisField gf(q);
  verify_field_axioms(gf);

  auto sig = std::make_shared<Signature>();
  int sf = sig->add_sort("F");
  int f_add = sig->add_function("add", {sf, sf}, sf);
  int f_mul = sig->add_function("mul", {sf, sf}, sf);
  int f_neg = sig->add_function("neg", {sf}, sf);
  int c_zero = sig->add_constant("zero", sf);
  int c_one = sig->add_constant("one", sf);

  FiniteStructure m(sig, {q});
  m.define_function(f_add, [gf](std::span<const Elem> a) {
    return gf.add(a[0], a[1]);
  });
  m.define_function(f_mul, [gf](std::span<const Elem> a) {
    return gf.mul(a[0], a[1]);
  });
  m.define_function(f_neg, [gf](std::span<const Elem> a) {
    return gf.neg(a[0]);
  });
  m.set_constant(c_zero, 0);
  m.set_constant(c_one, 1);
  m.declare("q", Rat(q));
  m.set_name("field:q=" + std::to_string(q));
  return m;
}

FiniteStructure make_paley(std::uint32_t q) {
  if (q % 4 != 1)
    throw std::invalid_argument("make_paley: q must be 1 mod 4");
  GaloisField gf(q);
  std::vector<bool> square(q, false);
  for (std::uint32_t x = 1; x < q; ++x) square[gf.mul(x, x)] = true;
  square[0] = false;

  auto sig = std::make_shared<Signature>();
  int sv = sig->add_sort("v");
  int r_adj = sig->add_relation("adj", {sv, sv});

  FiniteStructure m(sig, {q});
  m.define_relation(r_adj, [gf, square](std::span<const Elem> a) {
    return a[0] != a[1] && square[gf.sub(a[0], a[1])];
  });
  m.declare("q", Rat(q));
  m.set_name("paley:q=" + std::to_string(q));

  if (q <= 2048) {
    std::vector<Elem> pair(2);
    for (Elem x = 0; x < q; ++x) {
      std::uint64_t deg = 0;
      for (Elem y = 0; y < q; ++y) {
        pair[0] = x;
        pair[1] = y;
        bool xy = m.rel(r_adj, pair);
        pair[0] = y;
        pair[1] = x;
        if (xy != m.rel(r_adj, pair))
          throw std::logic_error("paley adjacency not symmetric");
        if (x == y && xy) throw std::logic_error("paley adjacency not irreflexive");
        if (xy) ++deg;
      }
      if (deg != (q - 1) / 2)
        throw std::logic_error("paley graph not (q-1)/2 regular");
    }
  }
  return m;
}

namespace {

struct VectorCodec {
  std::uint32_t q, n;
  std::vector<Elem> decode(Elem v) const {
    std::vector<Elem> coords(n);
    for (std::uint32_t i = 0; i < n; ++i) {
      coords[i] = v % q;
      v /= q;
    }
    return coords;
  }
  Elem encode(const std::vector<Elem>& coords) const {
    Elem v = 0;
    for (std::uint32_t i = n; i-- > 0;) v = v * q + coords[i];
    return v;
  }
};

void add_space(Signature& sig, int sf, const std::string& suffix, int sv) {
  sig.add_function("vadd" + suffix, {sv, sv}, sv);
  sig.add_function("vneg" + suffix, {sv}, sv);
  sig.add_function("smul" + suffix, {sf, sv}, sv);
  sig.add_constant("zerov" + suffix, sv);
}

void define_space(FiniteStructure& m, const GaloisField& gf,
                  const std::string& suffix, std::uint32_t n) {
  const auto& sig = m.sig();
  VectorCodec codec{gf.q(), n};
  auto fi = [&sig](const std::string& name) { return sig.symbol_index(name); };
  m.define_function(fi("vadd" + suffix), [gf, codec](std::span<const Elem> a) {
    auto x = codec.decode(a[0]);
    auto y = codec.decode(a[1]);
    for (std::uint32_t i = 0; i < codec.n; ++i) x[i] = gf.add(x[i], y[i]);
    return codec.encode(x);
  });
  m.define_function(fi("vneg" + suffix), [gf, codec](std::span<const Elem> a) {
    auto x = codec.decode(a[0]);
    for (std::uint32_t i = 0; i < codec.n; ++i) x[i] = gf.neg(x[i]);
    return codec.encode(x);
  });
  m.define_function(fi("smul" + suffix), [gf, codec](std::span<const Elem> a) {
    auto x = codec.decode(a[1]);
    for (std::uint32_t i = 0; i < codec.n; ++i) x[i] = gf.mul(a[0], x[i]);
    return codec.encode(x);
  });
  m.set_constant(sig.symbol_index("zerov" + suffix), 0);
}

std::uint64_t checked_pow(std::uint64_t base, std::uint32_t exp,
                          std::uint64_t limit) {
  std::uint64_t acc = 1;
  for (std::uint32_t i = 0; i < exp; ++i) {
    acc *= base;
    if (acc > limit) throw std::invalid_argument("carrier exceeds size limit");
  }
  return acc;
}

}  // namespace

FiniteStructure make_vs(std::uint32_t q, std::uint32_t n,
                        bool with_symplectic) {
  if (n < 1) throw std::invalid_argument("make_vs: n must be >= 1");
  if (with_symplectic && n % 2 != 0)
    throw std::invalid_argument("make_vs: symplectic form needs even dimension");
  GaloisField gf(q);
  std::uint64_t vsize = checked_pow(q, n, std::uint64_t{1} << 18);

  auto sig = std::make_shared<Signature>();
  int sf = sig->add_sort("F");
  int sv = sig->add_sort("V");
  sig->add_function("add", {sf, sf}, sf);
  sig->add_function("mul", {sf, sf}, sf);
  sig->add_function("neg", {sf}, sf);
  sig->add_constant("zero", sf);
  sig->add_constant("one", sf);
  add_space(*sig, sf, "", sv);
  int f_beta = with_symplectic ? sig->add_function("beta", {sv, sv}, sf) : -1;

  FiniteStructure m(sig, {q, vsize});
  auto fi = [&](const std::string& name) { return sig->symbol_index(name); };
  m.define_function(fi("add"), [gf](std::span<const Elem> a) {
    return gf.add(a[0], a[1]);
  });
  m.define_function(fi("mul"), [gf](std::span<const Elem> a) {
    return gf.mul(a[0], a[1]);
  });
  m.define_function(fi("neg"), [gf](std::span<const Elem> a) {
    return gf.neg(a[0]);
  });
  m.set_constant(fi("zero"), 0);
  m.set_constant(fi("one"), 1);
  define_space(m, gf, "", n);

  VectorCodec codec{q, n};
  if (with_symplectic) {
    auto beta = [gf, codec](Elem xv, Elem yv) {
      auto x = codec.decode(xv);
      auto y = codec.decode(yv);
      std::uint32_t acc = 0;
      for (std::uint32_t i = 0; i + 1 < codec.n; i += 2) {
        acc = gf.add(acc, gf.mul(x[i], y[i + 1]));
        acc = gf.sub(acc, gf.mul(x[i + 1], y[i]));
      }
      return acc;
    };
    m.define_function(f_beta, [beta](std::span<const Elem> a) {
      return beta(a[0], a[1]);
    });

    // Alternating: exhaustive. Non-degeneracy: every nonzero v pairs
    // nontrivially with some basis vector.
    for (Elem v = 0; v < vsize; ++v)
      if (beta(v, v) != 0) throw std::logic_error("beta not alternating");
    for (Elem v = 1; v < vsize; ++v) {
      bool hit = false;
      for (std::uint32_t i = 0; i < n && !hit; ++i) {
        std::vector<Elem> e(n, 0);
        e[i] = 1;
        if (beta(v, codec.encode(e)) != 0) hit = true;
      }
      if (!hit) throw std::logic_error("beta degenerate");
    }
    // Bilinearity: exhaustive when small, seeded sample otherwise.
    auto check_linear = [&](Elem x, Elem y, Elem z, Elem s) {
      std::vector<Elem> args(2);
      auto vadd = [&](Elem a, Elem b) {
        args[0] = a;
        args[1] = b;
        return m.fun(fi("vadd"), args);
      };
      if (beta(vadd(x, y), z) != gf.add(beta(x, z), beta(y, z)))
        throw std::logic_error("beta not additive");
      args[0] = s;
      args[1] = x;
      Elem sx = m.fun(fi("smul"), args);
      if (beta(sx, z) != gf.mul(s, beta(x, z)))
        throw std::logic_error("beta not homogeneous");
    };
    if (vsize <= 64) {
      for (Elem x = 0; x < vsize; ++x)
        for (Elem y = 0; y < vsize; ++y)
          for (Elem z = 0; z < vsize; ++z)
            for (Elem s = 0; s < q; ++s) check_linear(x, y, z, s);
    } else {
      std::mt19937_64 rng(vsize * 1099511628211ull + q);
      std::uniform_int_distribution<Elem> pv(0, static_cast<Elem>(vsize - 1));
      std::uniform_int_distribution<Elem> pf(0, q - 1);
      for (int i = 0; i < 2000; ++i)
        check_linear(pv(rng), pv(rng), pv(rng), pf(rng));
    }
  }

  m.declare("q", Rat(q));
  m.declare("n", Rat(n));
  m.declare("V", Rat(vsize));
  m.set_name("vs:q=" + std::to_string(q) + ",n=" + std::to_string(n) +
             (with_symplectic ? ",symplectic" : ""));
  return m;
}

FiniteStructure make_vs_family(std::uint32_t q,
                               const std::vector<std::uint32_t>& dims) {
  if (dims.empty()) throw std::invalid_argument("make_vs_family: no spaces");
  GaloisField gf(q);
  auto sig = std::make_shared<Signature>();
  int sf = sig->add_sort("F");
  std::vector<std::uint64_t> carriers{q};
  for (std::size_t i = 0; i < dims.size(); ++i) {
    int sv = sig->add_sort("V" + std::to_string(i + 1));
    carriers.push_back(checked_pow(q, dims[i], std::uint64_t{1} << 18));
    (void)sv;
  }
  sig->add_function("add", {sf, sf}, sf);
  sig->add_function("mul", {sf, sf}, sf);
  sig->add_function("neg", {sf}, sf);
  sig->add_constant("zero", sf);
  sig->add_constant("one", sf);
  for (std::size_t i = 0; i < dims.size(); ++i)
    add_space(*sig, sf, std::to_string(i + 1), static_cast<int>(i + 1));

  FiniteStructure m(sig, carriers);
  auto fi = [&](const std::string& name) { return sig->symbol_index(name); };
  m.define_function(fi("add"), [gf](std::span<const Elem> a) {
    return gf.add(a[0], a[1]);
  });
  m.define_function(fi("mul"), [gf](std::span<const Elem> a) {
    return gf.mul(a[0], a[1]);
  });
  m.define_function(fi("neg"), [gf](std::span<const Elem> a) {
    return gf.neg(a[0]);
  });
  m.set_constant(fi("zero"), 0);
  m.set_constant(fi("one"), 1);
  std::string name = "vsfam:q=" + std::to_string(q) + ",dims=";
  for (std::size_t i = 0; i < dims.size(); ++i) {
    define_space(m, gf, std::to_string(i + 1), dims[i]);
    m.declare("n" + std::to_string(i + 1), Rat(dims[i]));
    m.declare("V" + std::to_string(i + 1), Rat(carriers[i + 1]));
    name += (i ? "." : "") + std::to_string(dims[i]);
  }
  m.declare("q", Rat(q));
  m.set_name(name);
  return m;
}

FiniteStructure make_abelian(const std::vector<HomocyclicFactor>& factors) {
  if (factors.empty()) throw std::invalid_argument("make_abelian: no factors");
  std::uint64_t order = 1;
  std::vector<std::uint64_t> moduli;  // one entry per coordinate
  for (const auto& [p, n, m] : factors) {
    if (!is_prime(p)) throw std::invalid_argument("make_abelian: p not prime");
    if (n < 1 || m < 1) throw std::invalid_argument("make_abelian: n,m >= 1");
    std::uint64_t pn = checked_pow(p, n, std::uint64_t{1} << 18);
    for (std::uint32_t i = 0; i < m; ++i) {
      moduli.push_back(pn);
      order *= pn;
      if (order > (std::uint64_t{1} << 18))
        throw std::invalid_argument("make_abelian: total order exceeds 2^18");
    }
  }

  auto sig = std::make_shared<Signature>();
  int sg = sig->add_sort("G");
  int f_add = sig->add_function("add", {sg, sg}, sg);
  int f_neg = sig->add_function("neg", {sg}, sg);
  int c_zero = sig->add_constant("zero", sg);

  FiniteStructure m(sig, {order});
  auto decode = [moduli](Elem v) {
    std::vector<std::uint64_t> coords(moduli.size());
    for (std::size_t i = 0; i < moduli.size(); ++i) {
      coords[i] = v % moduli[i];
      v = static_cast<Elem>(v / moduli[i]);
    }
    return coords;
  };
  auto encode = [moduli](const std::vector<std::uint64_t>& coords) {
    std::uint64_t v = 0;
    for (std::size_t i = moduli.size(); i-- > 0;) v = v * moduli[i] + coords[i];
    return static_cast<Elem>(v);
  };
  m.define_function(f_add, [decode, encode, moduli](std::span<const Elem> a) {
    auto x = decode(a[0]);
    auto y = decode(a[1]);
    for (std::size_t i = 0; i < moduli.size(); ++i)
      x[i] = (x[i] + y[i]) % moduli[i];
    return encode(x);
  });
  m.define_function(f_neg, [decode, encode, moduli](std::span<const Elem> a) {
    auto x = decode(a[0]);
    for (std::size_t i = 0; i < moduli.size(); ++i)
      x[i] = (moduli[i] - x[i]) % moduli[i];
    return encode(x);
  });
  m.set_constant(c_zero, 0);

  m.declare("order", Rat(order));
  std::string name = "abelian:";
  for (std::size_t i = 0; i < factors.size(); ++i) {
    std::string suffix = factors.size() == 1 ? "" : std::to_string(i + 1);
    const auto& [p, n, mm] = factors[i];
    m.declare("p" + suffix, Rat(p));
    m.declare("n" + suffix, Rat(n));
    m.declare("m" + suffix, Rat(mm));
    // Size of the p-torsion subgroup; the second balanced quantity of the
    // homocyclic count templates.
    m.declare("ptor" + suffix, Rat(ipow(Int(p), mm)));
    name += (i ? "+" : "") + std::to_string(p) + "^" + std::to_string(n) +
            "x" + std::to_string(mm);
  }
  m.set_name(name);
  return m;
}

FiniteStructure make_gl(std::uint32_t n, std::uint32_t q) {
  if (n > 3 || q > 3)
    throw std::invalid_argument("make_gl: carrier too large (n <= 3, q <= 3)");
  if (n < 1 || !is_prime(q))
    throw std::invalid_argument("make_gl: need n >= 1 and q prime");
  std::uint64_t carrier = checked_pow(q, n * n, std::uint64_t{1} << 18);

  auto sig = std::make_shared<Signature>();
  int sm = sig->add_sort("M");
  int f_add = sig->add_function("add", {sm, sm}, sm);
  int f_bracket = sig->add_function("bracket", {sm, sm}, sm);
  std::vector<int> consts;
  for (std::uint32_t r = 0; r <= n; ++r)
    consts.push_back(sig->add_constant("A" + std::to_string(r), sm));

  FiniteStructure m(sig, {carrier});
  auto decode = [n, q](Elem v) {
    std::vector<std::uint32_t> a(n * n);
    for (std::uint32_t i = 0; i < n * n; ++i) {
      a[i] = v % q;
      v /= q;
    }
    return a;
  };
  auto encode = [n, q](const std::vector<std::uint32_t>& a) {
    std::uint64_t v = 0;
    for (std::uint32_t i = n * n; i-- > 0;) v = v * q + a[i];
    return static_cast<Elem>(v);
  };
  m.define_function(f_add, [decode, encode, n, q](std::span<const Elem> ab) {
    auto a = decode(ab[0]);
    auto b = decode(ab[1]);
    for (std::uint32_t i = 0; i < n * n; ++i) a[i] = (a[i] + b[i]) % q;
    return encode(a);
  });
  m.define_function(f_bracket, [decode, encode, n, q](std::span<const Elem> ab) {
    auto a = decode(ab[0]);
    auto b = decode(ab[1]);
    std::vector<std::uint32_t> out(n * n, 0);
    for (std::uint32_t i = 0; i < n; ++i)
      for (std::uint32_t j = 0; j < n; ++j) {
        std::uint32_t acc = 0;
        for (std::uint32_t k = 0; k < n; ++k) {
          acc = (acc + a[i * n + k] * b[k * n + j]) % q;
          acc = (acc + (q - 1) * (b[i * n + k] * a[k * n + j] % q)) % q;
        }
        out[i * n + j] = acc;
      }
    return encode(out);
  });
  for (std::uint32_t r = 0; r <= n; ++r) {
    std::vector<std::uint32_t> a(n * n, 0);
    for (std::uint32_t i = 0; i < r; ++i) a[i * n + i] = 1;
    m.set_constant(consts[r], encode(a));
  }
  m.declare("n", Rat(n));
  m.declare("q", Rat(q));
  m.set_name("gl:n=" + std::to_string(n) + ",q=" + std::to_string(q));
  return m;
}

FiniteStructure make_linear_order(std::uint64_t n) {
  if (n < 1 || n > (std::uint64_t{1} << 18))
    throw std::invalid_argument("make_linear_order: size out of range");
  auto sig = std::make_shared<Signature>();
  int sv = sig->add_sort("v");
  int r_lt = sig->add_relation("lt", {sv, sv});
  FiniteStructure m(sig, {n});
  m.define_relation(r_lt,
                    [](std::span<const Elem> a) { return a[0] < a[1]; });
  m.declare("n", Rat(n));
  m.set_name("linorder:n=" + std::to_string(n));
  return m;
}

FiniteStructure make_equiv(const std::vector<std::uint64_t>& class_sizes) {
  std::uint64_t total = 0;
  for (std::uint64_t s : class_sizes) {
    if (s == 0) throw std::invalid_argument("make_equiv: empty class");
    total += s;
  }
  if (total == 0 || total > (std::uint64_t{1} << 18))
    throw std::invalid_argument("make_equiv: size out of range");
  std::vector<std::uint32_t> block_of(total);
  std::uint64_t at = 0;
  for (std::size_t b = 0; b < class_sizes.size(); ++b)
    for (std::uint64_t i = 0; i < class_sizes[b]; ++i)
      block_of[at++] = static_cast<std::uint32_t>(b);

  auto sig = std::make_shared<Signature>();
  int sv = sig->add_sort("v");
  int r_e = sig->add_relation("E", {sv, sv});
  FiniteStructure m(sig, {total});
  m.define_relation(r_e, [block_of](std::span<const Elem> a) {
    return block_of[a[0]] == block_of[a[1]];
  });
  m.declare("n", Rat(total));
  m.declare("classes", Rat(static_cast<std::uint64_t>(class_sizes.size())));
  m.set_name("equiv:n=" + std::to_string(total) +
             ",classes=" + std::to_string(class_sizes.size()));
  return m;
}

FiniteStructure make_graph(std::uint64_t n,
                           const std::vector<std::pair<Elem, Elem>>& edges) {
  if (n == 0 || n > (std::uint64_t{1} << 18))
    throw std::invalid_argument("make_graph: size out of range");
  std::set<std::pair<Elem, Elem>> edge_set;
  for (auto [a, b] : edges) {
    if (a >= n || b >= n || a == b)
      throw std::invalid_argument("make_graph: bad edge");
    edge_set.emplace(a, b);
    edge_set.emplace(b, a);
  }
  auto sig = std::make_shared<Signature>();
  int sv = sig->add_sort("v");
  int r_adj = sig->add_relation("adj", {sv, sv});
  FiniteStructure m(sig, {n});
  m.define_relation(r_adj, [edge_set](std::span<const Elem> a) {
    return edge_set.count({a[0], a[1]}) > 0;
  });
  m.declare("n", Rat(n));
  m.set_name("graph:n=" + std::to_string(n));
  return m;
}

namespace {

// Bit layout of a labeled tournament: pair (i, j) with i < j occupies slot
// pair_index(i, j); a set bit means i -> j.
std::uint32_t pair_index(std::uint32_t n, std::uint32_t i, std::uint32_t j) {
  // pairs (0,1)...(0,n-1),(1,2),...
  return i * n - i * (i + 1) / 2 + (j - i - 1);
}

bool beats_in(std::uint64_t bits, std::uint32_t n, std::uint32_t a,
              std::uint32_t b) {
  if (a == b) return false;
  if (a < b) return (bits >> pair_index(n, a, b)) & 1;
  return !((bits >> pair_index(n, b, a)) & 1);
}

std::uint64_t canonical_form(std::uint64_t bits, std::uint32_t n) {
  std::vector<std::uint32_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0u);
  std::uint64_t best = ~std::uint64_t{0};
  do {
    std::uint64_t mapped = 0;
    for (std::uint32_t i = 0; i < n; ++i)
      for (std::uint32_t j = i + 1; j < n; ++j)
        if (beats_in(bits, n, perm[i], perm[j]))
          mapped |= std::uint64_t{1} << pair_index(n, i, j);
    best = std::min(best, mapped);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

}  // namespace

FiniteStructure make_tournament(std::uint32_t n, std::uint64_t bits) {
  if (n == 0 || n > 11)
    throw std::invalid_argument("make_tournament: n out of range");
  auto sig = std::make_shared<Signature>();
  int sv = sig->add_sort("v");
  int r_beats = sig->add_relation("beats", {sv, sv});
  FiniteStructure m(sig, {n});
  m.define_relation(r_beats, [bits, n](std::span<const Elem> a) {
    return beats_in(bits, n, a[0], a[1]);
  });
  m.declare("n", Rat(n));
  m.set_name("tournament:n=" + std::to_string(n) + ",bits=" +
             std::to_string(bits));
  return m;
}

std::vector<FiniteStructure> enumerate_tournaments(std::uint32_t n,
                                                   bool up_to_iso) {
  if (n == 0) throw std::invalid_argument("enumerate_tournaments: n >= 1");
  if (up_to_iso && n > 6)
    throw std::invalid_argument("enumerate_tournaments: iso filtering capped at n=6");
  if (!up_to_iso && n > 5)
    throw std::invalid_argument("enumerate_tournaments: labeled listing capped at n=5");
  std::uint32_t pairs = n * (n - 1) / 2;
  std::uint64_t total = std::uint64_t{1} << pairs;
  std::vector<FiniteStructure> out;
  if (!up_to_iso) {
    out.reserve(total);
    for (std::uint64_t bits = 0; bits < total; ++bits)
      out.push_back(make_tournament(n, bits));
    return out;
  }
  std::set<std::uint64_t> seen;
  for (std::uint64_t bits = 0; bits < total; ++bits) {
    std::uint64_t canon = canonical_form(bits, n);
    if (seen.insert(canon).second) out.push_back(make_tournament(n, canon));
  }
  return out;
}

}  // namespace macscope
