#include "macscope/structure.hpp"

#include <stdexcept>

namespace macscope {

FiniteStructure::FiniteStructure(SignaturePtr sig,
                                 std::vector<std::uint64_t> carriers)
    : sig_(std::move(sig)), carriers_(std::move(carriers)) {
  if (carriers_.size() != sig_->sort_count())
    throw std::invalid_argument("FiniteStructure: carrier count mismatch");
  rels_.resize(sig_->relations().size());
  funs_.resize(sig_->functions().size());
  consts_.resize(sig_->constants().size(), 0);
  const_set_.resize(sig_->constants().size(), false);
  for (std::size_t r = 0; r < rels_.size(); ++r)
    rels_[r].strides = strides_for(sig_->relation(static_cast<int>(r)).arg_sorts);
  for (std::size_t f = 0; f < funs_.size(); ++f)
    funs_[f].strides = strides_for(sig_->function(static_cast<int>(f)).arg_sorts);
}

std::vector<std::uint64_t> FiniteStructure::strides_for(
    const std::vector<int>& arg_sorts) const {
  std::vector<std::uint64_t> strides(arg_sorts.size());
  std::uint64_t acc = 1;
  for (std::size_t i = arg_sorts.size(); i-- > 0;) {
    strides[i] = acc;
    acc *= carriers_.at(arg_sorts[i]);
  }
  return strides;
}

std::uint64_t FiniteStructure::tuple_space(
    const std::vector<int>& arg_sorts) const {
  std::uint64_t acc = 1;
  for (int s : arg_sorts) acc *= carriers_.at(s);
  return acc;
}

std::uint64_t FiniteStructure::flat_index(
    const std::vector<std::uint64_t>& strides,
    std::span<const Elem> args) const {
  std::uint64_t idx = 0;
  for (std::size_t i = 0; i < strides.size(); ++i)
    idx += strides[i] * args[i];
  return idx;
}

void FiniteStructure::set_relation_dense(int rel, std::vector<bool> bits) {
  auto& store = rels_.at(rel);
  std::uint64_t space = tuple_space(sig_->relation(rel).arg_sorts);
  if (bits.size() != space)
    throw std::invalid_argument("relation table size mismatch");
  store.dense = true;
  store.bits = std::move(bits);
}

void FiniteStructure::set_relation_fn(int rel, RelFn fn) {
  auto& store = rels_.at(rel);
  store.dense = false;
  store.fn = std::move(fn);
}

void FiniteStructure::set_function_dense(int fun, std::vector<Elem> table) {
  auto& store = funs_.at(fun);
  const auto& decl = sig_->function(fun);
  std::uint64_t space = tuple_space(decl.arg_sorts);
  if (table.size() != space)
    throw std::invalid_argument("function table size mismatch");
  std::uint64_t result_size = carriers_.at(decl.result_sort);
  for (Elem v : table)
    if (v >= result_size)
      throw std::invalid_argument("function table value out of range");
  store.dense = true;
  store.table = std::move(table);
}

void FiniteStructure::set_function_fn(int fun, FunFn fn) {
  auto& store = funs_.at(fun);
  store.dense = false;
  store.fn = std::move(fn);
}

void FiniteStructure::set_constant(int c, Elem value) {
  if (value >= carriers_.at(sig_->constant(c).sort))
    throw std::invalid_argument("constant value out of range");
  consts_.at(c) = value;
  const_set_.at(c) = true;
}

bool FiniteStructure::rel(int r, std::span<const Elem> args) const {
  const auto& store = rels_[r];
  if (store.dense) return store.bits[flat_index(store.strides, args)];
  if (!store.fn) throw std::logic_error("relation not defined");
  return store.fn(args);
}

Elem FiniteStructure::fun(int f, std::span<const Elem> args) const {
  const auto& store = funs_[f];
  if (store.dense) return store.table[flat_index(store.strides, args)];
  if (!store.fn) throw std::logic_error("function not defined");
  return store.fn(args);
}

Elem FiniteStructure::constant(int c) const {
  if (!const_set_.at(c)) throw std::logic_error("constant not defined");
  return consts_[c];
}

namespace {

template <typename Body>
void for_each_tuple(const std::vector<std::uint64_t>& sizes, Body&& body) {
  std::vector<Elem> tuple(sizes.size(), 0);
  while (true) {
    body(tuple);
    std::size_t i = tuple.size();
    while (i > 0) {
      --i;
      if (++tuple[i] < sizes[i]) break;
      tuple[i] = 0;
      if (i == 0) return;
    }
    if (tuple.empty()) return;
  }
}

}  // namespace

void FiniteStructure::define_relation(int rel, const RelFn& fn) {
  const auto& decl = sig_->relation(rel);
  std::uint64_t space = tuple_space(decl.arg_sorts);
  if (space > kDenseLimit) {
    set_relation_fn(rel, fn);
    return;
  }
  std::vector<bool> bits(space, false);
  std::vector<std::uint64_t> sizes;
  for (int s : decl.arg_sorts) sizes.push_back(carriers_[s]);
  std::uint64_t idx = 0;
  for_each_tuple(sizes, [&](const std::vector<Elem>& tuple) {
    bits[idx++] = fn(tuple);
  });
  set_relation_dense(rel, std::move(bits));
}

void FiniteStructure::define_function(int fun, const FunFn& fn) {
  const auto& decl = sig_->function(fun);
  std::uint64_t space = tuple_space(decl.arg_sorts);
  if (space > kDenseLimit) {
    std::uint64_t result_size = carriers_.at(decl.result_sort);
    set_function_fn(fun, [fn, result_size](std::span<const Elem> args) {
      Elem v = fn(args);
      if (v >= result_size) throw std::logic_error("function value out of range");
      return v;
    });
    return;
  }
  std::vector<Elem> table(space);
  std::vector<std::uint64_t> sizes;
  for (int s : decl.arg_sorts) sizes.push_back(carriers_[s]);
  std::uint64_t idx = 0;
  for_each_tuple(sizes, [&](const std::vector<Elem>& tuple) {
    table[idx++] = fn(tuple);
  });
  set_function_dense(fun, std::move(table));
}

void FiniteStructure::declare(const std::string& quantity, const Rat& value) {
  declared_[quantity] = value;
}

Rat FiniteStructure::declared_value(const std::string& quantity) const {
  auto it = declared_.find(quantity);
  if (it == declared_.end())
    throw std::out_of_range("undeclared size quantity '" + quantity + "'");
  return it->second;
}

}  // namespace macscope
