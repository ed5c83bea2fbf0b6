#include "ermakov/symbols.hpp"

namespace ermakov {

Symbol SymbolTable::add(const std::string& name, SymbolRole role, int base) {
  if (auto it = data_->by_name.find(name); it != data_->by_name.end()) {
    const auto& e = data_->entries[it->second];
    if (e.role != role) throw Error("symbol '" + name + "' already registered with a different role");
    return Symbol(data_, it->second);
  }
  const int id = static_cast<int>(data_->entries.size());
  data_->entries.push_back({name, role, base});
  data_->by_name.emplace(name, id);
  return Symbol(data_, id);
}

Symbol SymbolTable::time(const std::string& name) {
  Symbol s = add(name, SymbolRole::Time);
  data_->time_id = s.id();
  return s;
}

Jet SymbolTable::jet(const std::string& coord_name) {
  if (auto it = data_->by_name.find(coord_name); it != data_->by_name.end()) {
    for (const auto& ids : data_->jets) {
      if (ids[0] == it->second) return {by_id(ids[0]), by_id(ids[1]), by_id(ids[2])};
    }
    throw Error("symbol '" + coord_name + "' exists but is not a jet coordinate");
  }
  Symbol q = add(coord_name, SymbolRole::Coordinate);
  Symbol v = add(coord_name + "_dot", SymbolRole::Velocity, q.id());
  Symbol a = add(coord_name + "_ddot", SymbolRole::Acceleration, v.id());
  data_->jets.push_back({q.id(), v.id(), a.id()});
  return {q, v, a};
}

Symbol SymbolTable::parameter(const std::string& name) { return add(name, SymbolRole::Parameter); }

std::optional<Symbol> SymbolTable::find(std::string_view name) const {
  auto it = data_->by_name.find(std::string(name));
  if (it == data_->by_name.end()) return std::nullopt;
  return Symbol(data_, it->second);
}

Symbol SymbolTable::at(std::string_view name) const {
  auto s = find(name);
  if (!s) throw Error("unknown symbol '" + std::string(name) + "'");
  return *s;
}

std::vector<Jet> SymbolTable::jets() const {
  std::vector<Jet> out;
  out.reserve(data_->jets.size());
  for (const auto& ids : data_->jets) out.push_back({by_id(ids[0]), by_id(ids[1]), by_id(ids[2])});
  return out;
}

std::optional<Symbol> SymbolTable::time_symbol() const {
  if (data_->time_id < 0) return std::nullopt;
  return by_id(data_->time_id);
}

Binding::Binding(const SymbolTable& table)
    : table_(table),
      values_(static_cast<std::size_t>(table.size()) + 64, 0.0),
      bound_(static_cast<std::size_t>(table.size()) + 64, 0) {}

void Binding::set(const Symbol& s, double value) {
  const auto idx = static_cast<std::size_t>(s.id());
  if (idx >= values_.size()) {
    values_.resize(idx + 1, 0.0);
    bound_.resize(idx + 1, 0);
  }
  values_[idx] = value;
  bound_[idx] = 1;
}

void Binding::set(std::string_view name, double value) { set(table_.at(name), value); }

bool Binding::has(const Symbol& s) const {
  const auto idx = static_cast<std::size_t>(s.id());
  return idx < bound_.size() && bound_[idx] != 0;
}

double Binding::get(const Symbol& s) const {
  if (!has(s)) throw UnboundSymbol(s.name());
  return values_[static_cast<std::size_t>(s.id())];
}

std::vector<std::pair<std::string, double>> Binding::items() const {
  std::vector<std::pair<std::string, double>> out;
  for (std::size_t i = 0; i < bound_.size(); ++i) {
    if (bound_[i] && static_cast<int>(i) < table_.size()) {
      out.emplace_back(table_.by_id(static_cast<int>(i)).name(), values_[i]);
    }
  }
  return out;
}

}  // namespace ermakov
