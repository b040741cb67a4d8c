#ifndef MACSCOPE_SIGNATURE_HPP
#define MACSCOPE_SIGNATURE_HPP

#include <map>
#include <memory>
#include <string>
#include <vector>

namespace macscope {

/// Multi-sorted vocabulary. Names are unique across sorts, relations,
/// functions and constants.
class Signature {
 public:
  struct Relation {
    std::string name;
    std::vector<int> arg_sorts;
  };
  struct Function {
    std::string name;
    std::vector<int> arg_sorts;
    int result_sort;
  };
  struct Constant {
    std::string name;
    int sort;
  };

  enum class SymbolKind { None, Sort, Rel, Fun, Const };

  int add_sort(const std::string& name);
  int add_relation(const std::string& name, std::vector<int> arg_sorts);
  int add_function(const std::string& name, std::vector<int> arg_sorts,
                   int result_sort);
  int add_constant(const std::string& name, int sort);

  std::size_t sort_count() const { return sorts_.size(); }
  const std::string& sort_name(int s) const { return sorts_.at(s); }
  const std::vector<Relation>& relations() const { return relations_; }
  const std::vector<Function>& functions() const { return functions_; }
  const std::vector<Constant>& constants() const { return constants_; }
  const Relation& relation(int i) const { return relations_.at(i); }
  const Function& function(int i) const { return functions_.at(i); }
  const Constant& constant(int i) const { return constants_.at(i); }

  int sort_index(const std::string& name) const;       // -1 if absent
  SymbolKind kind(const std::string& name) const;
  int symbol_index(const std::string& name) const;     // within its kind

  /// Structural equality: formulas parsed against one signature evaluate
  /// against any structure whose signature has the same content.
  bool same_as(const Signature& other) const;

 private:
  void claim(const std::string& name, SymbolKind kind, int index);

  std::vector<std::string> sorts_;
  std::vector<Relation> relations_;
  std::vector<Function> functions_;
  std::vector<Constant> constants_;
  std::map<std::string, std::pair<SymbolKind, int>> by_name_;
};

using SignaturePtr = std::shared_ptr<const Signature>;

}  // namespace macscope

#endif
