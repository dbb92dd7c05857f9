#pragma once

#include <cstddef>
#include <type_traits>
#include <utility>

// Heterogeneous sequences with typed indices.
//
// An hseq is built inductively from hnil() and hcons(head, tail); its shape
// (the ordered list of element types) is part of the type. Indices are
// likewise inductive (here / there(i)) and carry their depth in the type, so
// projecting with an index that is out of bounds for a sequence is rejected
// at compile time rather than at run time.

namespace evjoin {

struct hnil_t {
  static constexpr std::size_t length = 0;
  friend constexpr bool operator==(hnil_t, hnil_t) { return true; }
  friend constexpr bool operator!=(hnil_t, hnil_t) { return false; }
};

template <class Head, class Tail>
struct hcons_t {
  static constexpr std::size_t length = 1 + Tail::length;
  Head head;
  Tail tail;

  friend constexpr bool operator==(const hcons_t& a, const hcons_t& b) {
    return a.head == b.head && a.tail == b.tail;
  }
  friend constexpr bool operator!=(const hcons_t& a, const hcons_t& b) {
    return !(a == b);
  }
};

namespace detail {
template <class T>
struct is_hseq : std::false_type {};
template <>
struct is_hseq<hnil_t> : std::true_type {};
template <class H, class T>
struct is_hseq<hcons_t<H, T>> : std::true_type {};
}  // namespace detail

template <class T>
concept hseq = detail::is_hseq<std::remove_cvref_t<T>>::value;

template <class T>
concept nonempty_hseq = hseq<T> && (std::remove_cvref_t<T>::length > 0);

constexpr hnil_t hnil() { return {}; }

template <class Head, hseq Tail>
constexpr hcons_t<std::decay_t<Head>, std::remove_cvref_t<Tail>> hcons(Head&& head, Tail&& tail) {
  return {std::forward<Head>(head), std::forward<Tail>(tail)};
}

constexpr hnil_t make_hseq() { return {}; }

template <class Head, class... Rest>
constexpr auto make_hseq(Head&& head, Rest&&... rest) {
  return hcons(std::forward<Head>(head), make_hseq(std::forward<Rest>(rest)...));
}

namespace detail {
template <class... Ts>
struct hseq_of_impl;
template <>
struct hseq_of_impl<> {
  using type = hnil_t;
};
template <class Head, class... Rest>
struct hseq_of_impl<Head, Rest...> {
  using type = hcons_t<Head, typename hseq_of_impl<Rest...>::type>;
};
}  // namespace detail

// The hseq type with elements Ts..., in order.
template <class... Ts>
using hseq_of = typename detail::hseq_of_impl<Ts...>::type;

// Element type at position N.
template <std::size_t N, class Seq>
struct element_at;
template <class H, class T>
struct element_at<0, hcons_t<H, T>> {
  using type = H;
};
template <std::size_t N, class H, class T>
struct element_at<N, hcons_t<H, T>> : element_at<N - 1, T> {};

template <std::size_t N, class Seq>
using element_at_t = typename element_at<N, std::remove_cvref_t<Seq>>::type;

// --- typed indices ---------------------------------------------------------

template <std::size_t N>
struct index_t {
  static constexpr std::size_t depth = N;
};

inline constexpr index_t<0> here{};

template <std::size_t N>
constexpr index_t<N + 1> there(index_t<N>) {
  return {};
}

// An index set: an ordered list of indices into one target shape. Duplicate
// positions are representable.
template <std::size_t... Ns>
struct index_set_t {
  static constexpr std::size_t size = sizeof...(Ns);
};

inline constexpr index_set_t<> no_indices{};

template <std::size_t N, std::size_t... Ns>
constexpr index_set_t<N, Ns...> index_add(index_t<N>, index_set_t<Ns...>) {
  return {};
}

template <std::size_t... Ns>
constexpr auto make_index_set(index_t<Ns>...) {
  return index_set_t<Ns...>{};
}

// An index is well-formed for a sequence iff its depth is below the length.
template <std::size_t N, class Seq>
concept in_bounds = hseq<Seq> && (N < std::remove_cvref_t<Seq>::length);

// --- projection ------------------------------------------------------------

// Head of a statically known nonempty sequence.
template <nonempty_hseq Seq>
constexpr const auto& safe_head(const Seq& s) {
  return s.head;
}

// Projects the element at depth N. Total on well-formed index/sequence pairs;
// ill-formed pairs do not compile.
template <std::size_t N, hseq Seq>
  requires in_bounds<N, Seq>
constexpr const auto& proj(index_t<N>, const Seq& s) {
  if constexpr (N == 0) {
    return s.head;
  } else {
    return proj(index_t<N - 1>{}, s.tail);
  }
}

template <std::size_t N, hseq Seq>
  requires in_bounds<N, Seq>
constexpr const auto& get(const Seq& s) {
  return proj(index_t<N>{}, s);
}

template <std::size_t N, hseq Seq>
  requires in_bounds<N, Seq>
constexpr auto& get(Seq& s) {
  if constexpr (N == 0) {
    return s.head;
  } else {
    return get<N - 1>(s.tail);
  }
}

// Multi-projection: the k-th element of the result is the projection of the
// k-th index in the set, in set order.
template <std::size_t... Ns, hseq Seq>
  requires(in_bounds<Ns, Seq> && ...)
constexpr auto mproj(index_set_t<Ns...>, const Seq& s) {
  return make_hseq(proj(index_t<Ns>{}, s)...);
}

// --- shape-preserving mapping ----------------------------------------------

// Applies f at every position. The result has the same length, with each
// position's type rewritten by f.
template <class F>
constexpr hnil_t hmap(F&&, const hnil_t&) {
  return {};
}

template <class F, class H, class T>
constexpr auto hmap(F&& f, const hcons_t<H, T>& s) {
  return hcons(f(s.head), hmap(f, s.tail));
}

template <class F>
constexpr void hfor_each(F&&, const hnil_t&) {}

template <class F, class H, class T>
constexpr void hfor_each(F&& f, const hcons_t<H, T>& s) {
  f(s.head);
  hfor_each(f, s.tail);
}

// Replaces the element at position N with v (same element type).
template <std::size_t N, class H, class T, class V>
  requires in_bounds<N, hcons_t<H, T>>
constexpr hcons_t<H, T> replace_at(const hcons_t<H, T>& s, V&& v) {
  if constexpr (N == 0) {
    return {std::forward<V>(v), s.tail};
  } else {
    return {s.head, replace_at<N - 1>(s.tail, std::forward<V>(v))};
  }
}

}  // namespace evjoin
