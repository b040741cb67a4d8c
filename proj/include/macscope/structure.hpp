#ifndef MACSCOPE_STRUCTURE_HPP
#define MACSCOPE_STRUCTURE_HPP

#include <cstdint>
#include <functional>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "macscope/rational.hpp"
#include "macscope/signature.hpp"

namespace macscope {

using Elem = std::uint32_t;

/// A finite multi-sorted model. Carriers are index sets 0..size-1; relation
/// and function semantics live in tables. Small tuple spaces are stored
/// densely (bit tables / index tables); larger ones fall back to computed
/// callbacks so that carriers up to 2^18 stay usable.
class FiniteStructure {
 public:
  static constexpr std::uint64_t kDenseLimit = std::uint64_t{1} << 24;

  using RelFn = std::function<bool(std::span<const Elem>)>;
  using FunFn = std::function<Elem(std::span<const Elem>)>;

  FiniteStructure(SignaturePtr sig, std::vector<std::uint64_t> carriers);

  const Signature& sig() const { return *sig_; }
  const SignaturePtr& sig_ptr() const { return sig_; }
  std::uint64_t carrier(int sort) const { return carriers_.at(sort); }
  const std::vector<std::uint64_t>& carriers() const { return carriers_; }

  /// Name used in reports; builders set it to something reproducible.
  const std::string& name() const { return name_; }
  void set_name(std::string name) { name_ = std::move(name); }

  void set_relation_dense(int rel, std::vector<bool> bits);
  void set_relation_fn(int rel, RelFn fn);
  void set_function_dense(int fun, std::vector<Elem> table);
  void set_function_fn(int fun, FunFn fn);
  void set_constant(int c, Elem value);

  bool rel(int r, std::span<const Elem> args) const;
  Elem fun(int f, std::span<const Elem> args) const;
  Elem constant(int c) const;

  /// Fills a dense relation table from a predicate when the tuple space is
  /// small enough, otherwise keeps the predicate.
  void define_relation(int rel, const RelFn& fn);
  void define_function(int fun, const FunFn& fn);

  void declare(const std::string& quantity, const Rat& value);
  const std::map<std::string, Rat>& declared() const { return declared_; }
  Rat declared_value(const std::string& quantity) const;

  std::uint64_t tuple_space(const std::vector<int>& arg_sorts) const;

 private:
  struct RelStore {
    bool dense = false;
    std::vector<bool> bits;
    RelFn fn;
    std::vector<std::uint64_t> strides;
  };
  struct FunStore {
    bool dense = false;
    std::vector<Elem> table;
    FunFn fn;
    std::vector<std::uint64_t> strides;
  };

  std::vector<std::uint64_t> strides_for(const std::vector<int>& arg_sorts) const;
  std::uint64_t flat_index(const std::vector<std::uint64_t>& strides,
                           std::span<const Elem> args) const;

  SignaturePtr sig_;
  std::vector<std::uint64_t> carriers_;
  std::vector<RelStore> rels_;
  std::vector<FunStore> funs_;
  std::vector<Elem> consts_;
  std::vector<bool> const_set_;
  std::map<std::string, Rat> declared_;
  std::string name_;
};

}  // namespace macscope

#endif
