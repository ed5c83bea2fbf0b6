#pragma once

#include <array>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "ermakov/errors.hpp"

namespace ermakov {

enum class SymbolRole { Time, Coordinate, Velocity, Acceleration, Parameter };

namespace detail {
struct TableData;
}

// Lightweight handle into a SymbolTable. Identity is (table, id); canonical
// ordering for expression trees is by name, which is unique within a table.
class Symbol {
 public:
  Symbol() = default;

  [[nodiscard]] bool valid() const { return table_ != nullptr; }
  [[nodiscard]] int id() const { return id_; }
  [[nodiscard]] const std::string& name() const;
  [[nodiscard]] SymbolRole role() const;

  friend bool operator==(const Symbol& a, const Symbol& b) {
    return a.table_.get() == b.table_.get() && a.id_ == b.id_;
  }
  friend bool operator!=(const Symbol& a, const Symbol& b) { return !(a == b); }

 private:
  friend class SymbolTable;
  friend class Binding;
  Symbol(std::shared_ptr<const detail::TableData> table, int id)
      : table_(std::move(table)), id_(id) {}

  std::shared_ptr<const detail::TableData> table_;
  int id_ = -1;
};

// Coordinate with its linked velocity and acceleration symbols.
struct Jet {
  Symbol coord;
  Symbol vel;
  Symbol accel;
};

namespace detail {
struct TableData {
  struct Entry {
    std::string name;
    SymbolRole role;
    int base = -1;  // velocity -> coordinate id, acceleration -> velocity id
  };
  std::vector<Entry> entries;
  std::unordered_map<std::string, int> by_name;
  std::vector<std::array<int, 3>> jets;  // (coord, vel, accel) ids
  int time_id = -1;
};
}  // namespace detail

// Shared-handle symbol table; copying shares the underlying registry.
class SymbolTable {
 public:
  SymbolTable() : data_(std::make_shared<detail::TableData>()) {}

  Symbol time(const std::string& name = "t");
  // Registers q plus "<q>_dot" and "<q>_ddot" in one linked triple.
  Jet jet(const std::string& coord_name);
  Symbol parameter(const std::string& name);

  [[nodiscard]] std::optional<Symbol> find(std::string_view name) const;
  [[nodiscard]] Symbol at(std::string_view name) const;
  [[nodiscard]] Symbol by_id(int id) const { return Symbol(data_, id); }
  [[nodiscard]] int size() const { return static_cast<int>(data_->entries.size()); }
  [[nodiscard]] std::vector<Jet> jets() const;
  [[nodiscard]] std::optional<Symbol> time_symbol() const;

  [[nodiscard]] bool same_table(const SymbolTable& other) const { return data_ == other.data_; }

 private:
  Symbol add(const std::string& name, SymbolRole role, int base = -1);
  std::shared_ptr<detail::TableData> data_;
};

// Symbol -> value map for numeric evaluation, slot-indexed by symbol id.
class Binding {
 public:
  Binding() = default;
  explicit Binding(const SymbolTable& table);

  void set(const Symbol& s, double value);
  void set(std::string_view name, double value);
  [[nodiscard]] bool has(const Symbol& s) const;
  [[nodiscard]] double get(const Symbol& s) const;  // throws UnboundSymbol
  [[nodiscard]] std::vector<std::pair<std::string, double>> items() const;

 private:
  SymbolTable table_;
  std::vector<double> values_;
  std::vector<char> bound_;
};

inline const std::string& Symbol::name() const { return table_->entries[id_].name; }
inline SymbolRole Symbol::role() const { return table_->entries[id_].role; }

}  // namespace ermakov
