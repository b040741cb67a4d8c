#include "macscope/signature.hpp"

#include <stdexcept>

namespace macscope {

void Signature::claim(const std::string& name, SymbolKind kind, int index) {
  auto [it, fresh] = by_name_.emplace(name, std::make_pair(kind, index));
  if (!fresh)
    throw std::invalid_argument("Signature: duplicate symbol '" + name + "'");
}

int Signature::add_sort(const std::string& name) {
  int idx = static_cast<int>(sorts_.size());
  claim(name, SymbolKind::Sort, idx);
  sorts_.push_back(name);
  return idx;
}

int Signature::add_relation(const std::string& name,
                            std::vector<int> arg_sorts) {
  int idx = static_cast<int>(relations_.size());
  claim(name, SymbolKind::Rel, idx);
  relations_.push_back({name, std::move(arg_sorts)});
  return idx;
}

int Signature::add_function(const std::string& name, std::vector<int> arg_sorts,
                            int result_sort) {
  int idx = static_cast<int>(functions_.size());
  claim(name, SymbolKind::Fun, idx);
  functions_.push_back({name, std::move(arg_sorts), result_sort});
  return idx;
}

int Signature::add_constant(const std::string& name, int sort) {
  int idx = static_cast<int>(constants_.size());
  claim(name, SymbolKind::Const, idx);
  constants_.push_back({name, sort});
  return idx;
}

int Signature::sort_index(const std::string& name) const {
  auto it = by_name_.find(name);
  if (it == by_name_.end() || it->second.first != SymbolKind::Sort) return -1;
  return it->second.second;
}

Signature::SymbolKind Signature::kind(const std::string& name) const {
  auto it = by_name_.find(name);
  return it == by_name_.end() ? SymbolKind::None : it->second.first;
}

int Signature::symbol_index(const std::string& name) const {
  auto it = by_name_.find(name);
  return it == by_name_.end() ? -1 : it->second.second;
}

bool Signature::same_as(const Signature& other) const {
  if (this == &other) return true;
  if (sorts_ != other.sorts_) return false;
  if (relations_.size() != other.relations_.size() ||
      functions_.size() != other.functions_.size() ||
      constants_.size() != other.constants_.size())
    return false;
  for (std::size_t i = 0; i < relations_.size(); ++i)
    if (relations_[i].name != other.relations_[i].name ||
        relations_[i].arg_sorts != other.relations_[i].arg_sorts)
      return false;
  for (std::size_t i = 0; i < functions_.size(); ++i)
    if (functions_[i].name != other.functions_[i].name ||
        functions_[i].arg_sorts != other.functions_[i].arg_sorts ||
        functions_[i].result_sort != other.functions_[i].result_sort)
      return false;
  for (std::size_t i = 0; i < constants_.size(); ++i)
    if (constants_[i].name != other.constants_[i].name ||
        constants_[i].sort != other.constants_[i].sort)
      return false;
  return true;
}

}  // namespace macscope
