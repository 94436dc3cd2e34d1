#include <iostream>

#include "multirel/io.hpp"
#include "multirel/multirel.hpp"

int main() {
  using namespace multirel;
  const Universe u = Universe::declare({{"X", 1}, {"Y", 2}});
  const MultiRelation r(parse_relation(u, "{(a,{a}),(a,{b})}", ObjType::of("X"), ObjType::of("Y").pow()));
  const std::string got = to_text(u, inner_union(r, r).rel());
  std::cout << got << "\n";
  return got == "{(a,{a}),(a,{b}),(a,{a,b})}" ? 0 : 1;
}
