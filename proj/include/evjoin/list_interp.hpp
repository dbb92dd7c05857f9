#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "evjoin/dsl.hpp"
#include "evjoin/format.hpp"
#include "evjoin/hlist.hpp"

// The sequential interpreter: joins over finite ordered collections via the
// nested-loop cartesian product, with the leftmost binding as the outermost
// loop. Expressions denote plain values, patterns denote the produced
// collection. Also provides the two minimal arithmetic interpreters used as
// algebra smoke tests (evaluation and pretty-printing).

namespace evjoin {

struct list_algebra {
  template <class A>
  struct binding {
    using element_type = A;
    using var_type = A;
    std::vector<A> source;
  };

  // context formation
  template <class A>
  binding<A> from(std::vector<A> source) const {
    return {std::move(source)};
  }
  hnil_t cnil() const { return {}; }
  template <class A, context C>
  auto ccons(binding<A> v, C ctx) const {
    return hcons(std::move(v), std::move(ctx));
  }

  // expressions (denoted by themselves)
  int lit(int n) const { return n; }
  int add(int a, int b) const { return a + b; }
  double lit_float(double x) const { return x; }
  bool lit_bool(bool b) const { return b; }
  std::string lit_string(std::string s) const { return s; }
  template <class A, class B>
  std::pair<A, B> pair(A a, B b) const {
    return {std::move(a), std::move(b)};
  }
  bool ge(double a, double b) const { return a >= b; }
  bool and_(bool a, bool b) const { return a && b; }
  std::string fmt1(std::string_view fmt, double x) const { return format_one_hole(fmt, x); }

  // patterns: the produced collection
  template <class A>
  std::vector<A> yield(A v) const {
    return {std::move(v)};
  }
  template <class A>
  std::vector<A> where(bool cond, std::vector<A> body) const {
    return cond ? std::move(body) : std::vector<A>{};
  }

  // The body must accept exactly the translated variable tuple.
  template <context C, class Body>
    requires matches_context<Body, C>
  auto join(const C& ctx, Body&& body) const {
    using vars = vars_of_t<C>;
    using production = std::invoke_result_t<Body, vars>;
    production out;
    cart(ctx, [&](const vars& tuple) {
      production p = body(tuple);
      out.insert(out.end(), std::make_move_iterator(p.begin()), std::make_move_iterator(p.end()));
    });
    return out;
  }
};

// Encloses k in one loop layer per binding, leftmost binding outermost. The
// empty context applies k to the empty tuple once.
template <class K>
void cart(const hnil_t&, K&& k) {
  k(hnil_t{});
}

template <class A, class Tail, class K>
void cart(const hcons_t<list_algebra::binding<A>, Tail>& ctx, K&& k) {
  for (const A& x : ctx.head.source) {
    cart(ctx.tail, [&](const auto& rest) { k(hcons(x, rest)); });
  }
}

// --- primer interpreters -----------------------------------------------------

// Evaluates integer expressions to their value.
struct num_algebra {
  int lit(int n) const { return n; }
  int add(int a, int b) const { return a + b; }
};

// Renders integer expressions as strings; the carrier keeps the expression
// type as a phantom parameter.
struct pp_algebra {
  template <class A>
  struct repr {
    std::string text;
  };

  repr<int> lit(int n) const { return {"<" + std::to_string(n) + ">"}; }
  repr<int> add(const repr<int>& a, const repr<int>& b) const {
    return {"(" + a.text + " + " + b.text + ")"};
  }
};

}  // namespace evjoin
