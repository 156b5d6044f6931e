#include "pdn/params.hpp"

#include <stdexcept>

namespace pdn {

Param& ParamStore::add(const std::string& name, Tensor init) {
  if (has(name)) throw std::invalid_argument("param store: duplicate name '" + name + "'");
  items_.emplace_back(name, std::move(init));
  return items_.back();
}

Param& ParamStore::get(const std::string& name) {
  for (Param& p : items_)
    if (p.name == name) return p;
  throw std::out_of_range("param store: no parameter '" + name + "'");
}

const Param& ParamStore::get(const std::string& name) const {
  for (const Param& p : items_)
    if (p.name == name) return p;
  throw std::out_of_range("param store: no parameter '" + name + "'");
}

bool ParamStore::has(const std::string& name) const {
  for (const Param& p : items_)
    if (p.name == name) return true;
  return false;
}

long long ParamStore::total_values() const {
  long long n = 0;
  for (const Param& p : items_) n += p.value.size();
  return n;
}

void ParamStore::zero_grads() {
  for (Param& p : items_) p.grad.fill(0.0);
}

}  // namespace pdn
