#include "macscope/spec_io.hpp"

#include <fstream>
#include <set>
#include <stdexcept>

#include "macscope/builders.hpp"

namespace macscope {

namespace {

using nlohmann::json;

FiniteStructure build_explicit(const json& spec) {
  auto sig = std::make_shared<Signature>();
  std::vector<std::uint64_t> carriers;
  for (const auto& s : spec.at("sorts")) {
    sig->add_sort(s.at("name").get<std::string>());
    carriers.push_back(s.at("size").get<std::uint64_t>());
  }
  auto sort_of = [&](const std::string& name) {
    int idx = sig->sort_index(name);
    if (idx < 0) throw std::invalid_argument("explicit: unknown sort " + name);
    return idx;
  };
  struct RelSpec {
    int index;
    json tuples;
  };
  std::vector<RelSpec> rels;
  if (spec.contains("relations")) {
    for (const auto& r : spec.at("relations")) {
      std::vector<int> args;
      for (const auto& a : r.at("args")) args.push_back(sort_of(a));
      int idx = sig->add_relation(r.at("name").get<std::string>(), args);
      rels.push_back({idx, r.at("tuples")});
    }
  }
  struct FunSpec {
    int index;
    json table;
  };
  std::vector<FunSpec> funs;
  if (spec.contains("functions")) {
    for (const auto& f : spec.at("functions")) {
      std::vector<int> args;
      for (const auto& a : f.at("args")) args.push_back(sort_of(a));
      int idx = sig->add_function(f.at("name").get<std::string>(), args,
                                  sort_of(f.at("result")));
      funs.push_back({idx, f.at("table")});
    }
  }
  struct ConstSpec {
    int index;
    Elem value;
  };
  std::vector<ConstSpec> consts;
  if (spec.contains("constants")) {
    for (const auto& c : spec.at("constants")) {
      int idx = sig->add_constant(c.at("name").get<std::string>(),
                                  sort_of(c.at("sort")));
      consts.push_back({idx, c.at("value").get<Elem>()});
    }
  }

  FiniteStructure m(sig, carriers);
  for (const auto& r : rels) {
    std::set<std::vector<Elem>> tuples;
    for (const auto& t : r.tuples) tuples.insert(t.get<std::vector<Elem>>());
    m.define_relation(r.index, [tuples](std::span<const Elem> args) {
      return tuples.count(std::vector<Elem>(args.begin(), args.end())) > 0;
    });
  }
  for (const auto& f : funs)
    m.set_function_dense(f.index, f.table.get<std::vector<Elem>>());
  for (const auto& c : consts) m.set_constant(c.index, c.value);
  m.set_name("explicit");
  return m;
}

}  // namespace

FiniteStructure structure_from_spec(const nlohmann::json& spec) {
  std::string builder = spec.at("builder").get<std::string>();
  FiniteStructure m = [&]() -> FiniteStructure {
    if (builder == "field") return make_field(spec.at("q").get<std::uint32_t>());
    if (builder == "paley") return make_paley(spec.at("q").get<std::uint32_t>());
    if (builder == "vs")
      return make_vs(spec.at("q").get<std::uint32_t>(),
                     spec.at("n").get<std::uint32_t>(),
                     spec.value("symplectic", 0) != 0);
    if (builder == "vsfam")
      return make_vs_family(spec.at("q").get<std::uint32_t>(),
                            spec.at("dims").get<std::vector<std::uint32_t>>());
    if (builder == "abelian") {
      if (spec.contains("factors")) {
        std::vector<HomocyclicFactor> factors;
        for (const auto& f : spec.at("factors"))
          factors.push_back({f.at(0).get<std::uint64_t>(),
                             f.at(1).get<std::uint32_t>(),
                             f.at(2).get<std::uint32_t>()});
        return make_abelian(factors);
      }
      return make_abelian({{spec.at("p").get<std::uint64_t>(),
                            spec.at("n").get<std::uint32_t>(),
                            spec.at("m").get<std::uint32_t>()}});
    }
    if (builder == "gl")
      return make_gl(spec.at("n").get<std::uint32_t>(),
                     spec.at("q").get<std::uint32_t>());
    if (builder == "linorder")
      return make_linear_order(spec.at("n").get<std::uint64_t>());
    if (builder == "equiv") {
      if (spec.contains("pow2")) {
        std::uint32_t k = spec.at("pow2").get<std::uint32_t>();
        std::vector<std::uint64_t> sizes;
        for (std::uint32_t i = 0; i <= k; ++i)
          sizes.push_back(std::uint64_t{1} << i);
        return make_equiv(sizes);
      }
      return make_equiv(spec.at("sizes").get<std::vector<std::uint64_t>>());
    }
    if (builder == "graph") {
      std::vector<std::pair<Elem, Elem>> edges;
      for (const auto& e : spec.at("edges"))
        edges.emplace_back(e.at(0).get<Elem>(), e.at(1).get<Elem>());
      return make_graph(spec.at("n").get<std::uint64_t>(), edges);
    }
    if (builder == "tournament")
      return make_tournament(spec.at("n").get<std::uint32_t>(),
                             spec.value("bits", std::uint64_t{0}));
    if (builder == "explicit") return build_explicit(spec);
    throw std::invalid_argument("unknown builder '" + builder + "'");
  }();
  if (spec.contains("declare"))
    for (const auto& [key, value] : spec.at("declare").items()) {
      if (value.is_number_integer()) {
        m.declare(key, Rat(value.get<long long>()));
      } else {
        auto r = rat_from_string(value.get<std::string>());
        if (!r) throw std::invalid_argument("declare: bad rational for " + key);
        m.declare(key, *r);
      }
    }
  return m;
}

FiniteStructure structure_from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open spec file " + path);
  nlohmann::json spec;
  in >> spec;
  return structure_from_spec(spec);
}

namespace {

std::vector<std::string> split(const std::string& s, char delim) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    auto pos = s.find(delim, start);
    out.push_back(s.substr(start, pos == std::string::npos ? std::string::npos
                                                           : pos - start));
    if (pos == std::string::npos) break;
    start = pos + 1;
  }
  return out;
}

// "13,17,29" or "1..4" (or a mix, comma-separated).
std::vector<std::uint64_t> expand_values(const std::string& text) {
  std::vector<std::uint64_t> out;
  for (const auto& piece : split(text, ',')) {
    auto dots = piece.find("..");
    if (dots != std::string::npos) {
      std::uint64_t lo = std::stoull(piece.substr(0, dots));
      std::uint64_t hi = std::stoull(piece.substr(dots + 2));
      for (std::uint64_t v = lo; v <= hi; ++v) out.push_back(v);
    } else {
      out.push_back(std::stoull(piece));
    }
  }
  return out;
}

}  // namespace

std::vector<FiniteStructure> expand_class_spec(const std::string& spec) {
  auto segments = split(spec, ':');
  if (segments.empty() || segments[0].empty())
    throw std::invalid_argument("empty class spec");
  std::string builder = segments[0];

  // Dotted lists (dims, sizes) stay single-valued; everything else expands.
  std::vector<std::pair<std::string, std::vector<std::uint64_t>>> multi;
  std::vector<std::pair<std::string, std::string>> fixed;
  for (std::size_t i = 1; i < segments.size(); ++i) {
    auto eq = segments[i].find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("class spec: expected key=value in '" +
                                  segments[i] + "'");
    std::string key = segments[i].substr(0, eq);
    std::string value = segments[i].substr(eq + 1);
    bool list_key = key == "dims" || key == "sizes" || key == "edges";
    if (list_key ||
        (value.find('.') != std::string::npos &&
         value.find("..") == std::string::npos)) {
      fixed.emplace_back(key, value);
    } else {
      multi.emplace_back(key, expand_values(value));
    }
  }

  std::vector<FiniteStructure> out;
  std::vector<std::size_t> at(multi.size(), 0);
  while (true) {
    nlohmann::json doc;
    doc["builder"] = builder;
    for (std::size_t i = 0; i < multi.size(); ++i)
      doc[multi[i].first] = multi[i].second[at[i]];
    for (const auto& [key, value] : fixed) {
      std::vector<std::uint64_t> items;
      for (const auto& piece : split(value, '.'))
        items.push_back(std::stoull(piece));
      doc[key] = items;
    }
    out.push_back(structure_from_spec(doc));
    std::size_t i = multi.size();
    bool carried = true;
    while (i > 0 && carried) {
      --i;
      if (++at[i] < multi[i].second.size()) {
        carried = false;
      } else {
        at[i] = 0;
      }
    }
    if (carried || multi.empty()) break;
  }
  return out;
}

}  // namespace macscope
