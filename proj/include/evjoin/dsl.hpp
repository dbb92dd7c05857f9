#pragma once

#include <type_traits>

#include "evjoin/hlist.hpp"

// Shared vocabulary of the tagless-final pattern algebra.
//
// A pattern term is a callable that is generic over its interpreter: it
// receives an algebra object and builds a denotation purely through that
// object's operations (literals, where/yield, context formation, join). The
// interpreters in this library — the sequential collection interpreter and
// the event-correlation engine — supply concrete carrier types behind one
// shared scheme:
//
//   * a binding (the result of from) names its source element type and the
//     pattern-variable type it translates to;
//   * a context is an hseq of bindings, formed with cnil/ccons, so the join
//     shape is part of the context's type;
//   * the join body is an n-ary function over the translated variable tuple,
//     a right-nested hseq ending in hnil.
//
// Body arity and types are checked against the context before anything runs:
// a body that does not match the translated shape makes the join ill-formed.

namespace evjoin {

template <class B>
concept context_binding = requires {
  typename B::element_type;
  typename B::var_type;
};

namespace detail {

template <class C>
struct is_context : std::false_type {};
template <>
struct is_context<hnil_t> : std::true_type {};
template <class B, class T>
struct is_context<hcons_t<B, T>> {
  static constexpr bool value = context_binding<B> && is_context<T>::value;
};

template <class C>
struct vars_of_impl;
template <>
struct vars_of_impl<hnil_t> {
  using type = hnil_t;
};
template <class B, class T>
struct vars_of_impl<hcons_t<B, T>> {
  using type = hcons_t<typename B::var_type, typename vars_of_impl<T>::type>;
};

// Bare element types of a context, as a pack carrier.
template <class... Ts>
struct type_pack {};

template <class Pack, class C>
struct context_pack_impl;
template <class... Ts>
struct context_pack_impl<type_pack<Ts...>, hnil_t> {
  using type = type_pack<Ts...>;
};
template <class... Ts, class B, class T>
struct context_pack_impl<type_pack<Ts...>, hcons_t<B, T>> {
  using type = typename context_pack_impl<type_pack<Ts..., typename B::element_type>, T>::type;
};

template <class Pack>
struct pack_to_hseq;
template <class... Ts>
struct pack_to_hseq<type_pack<Ts...>> {
  using type = hseq_of<Ts...>;
};

}  // namespace detail

template <class C>
concept context = hseq<C> && detail::is_context<std::remove_cvref_t<C>>::value;

// The pattern-variable tuple type a context translates to: one var_type per
// binding, in binding order, as a right-nested hseq.
template <context C>
using vars_of_t = typename detail::vars_of_impl<std::remove_cvref_t<C>>::type;

// The bare element types of a context, as a pack carrier.
template <context C>
using context_elements_t =
    typename detail::context_pack_impl<detail::type_pack<>, std::remove_cvref_t<C>>::type;

// The join shape of a context: its element types as a type-level hseq.
template <context C>
using context_shape_t = typename detail::pack_to_hseq<context_elements_t<C>>::type;

// True iff a pattern body accepts the variable tuple of the given context.
// The static-safety check behind every join.
template <class Body, class C>
concept matches_context =
    context<C> && std::is_invocable_v<Body, vars_of_t<std::remove_cvref_t<C>>>;

template <class Body, class C>
inline constexpr bool pattern_body_matches = matches_context<Body, C>;

// --- contextual extensions ---------------------------------------------------
//
// Extensions form a monoid: enil is the identity and ext_merge composes. An
// extension value is a descriptor; interpreters that support extensions
// instantiate it against a concrete join shape (and reject descriptors whose
// position demands exceed that shape). In ext_merge(x, y), y is composed
// innermost and observes notifications before x.

struct enil_t {};

template <class X, class Y>
struct ext_merge_t {
  X first;
  Y second;
};

constexpr enil_t enil() { return {}; }

template <class X, class Y>
constexpr ext_merge_t<X, Y> ext_merge(X x, Y y) {
  return {std::move(x), std::move(y)};
}

}  // namespace evjoin
