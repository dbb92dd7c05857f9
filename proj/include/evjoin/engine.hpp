#pragma once

#include <array>
#include <condition_variable>
#include <cstddef>
#include <deque>
#include <functional>
#include <mutex>
#include <optional>
#include <span>
#include <stdexcept>
#include <thread>
#include <tuple>
#include <utility>
#include <variant>
#include <vector>

#include "evjoin/dsl.hpp"
#include "evjoin/format.hpp"
#include "evjoin/hlist.hpp"
#include "evjoin/interval.hpp"

// The event-correlation interpreter. A join instance is a deterministic state
// machine over one FIFO mailbox per bound source: each arriving event is run
// through the interceptor chain and, unless suppressed, reaches the default
// callback, which crosses the event (focused as a singleton at its position)
// with every other mailbox, feeds each tuple to the compiled pattern body and
// only then appends the event to its own mailbox. Matches carry the least
// upper bound of their constituents' intervals.
//
// Interceptors override per-position behaviour (most_recently truncation,
// aligning lockstep consumption). They are composed with ext_merge, where the
// right operand observes notifications first, and may only touch the
// mailboxes of the positions they were given.

namespace evjoin {

template <class A>
struct event {
  A value;
  interval meta;

  friend bool operator==(const event& a, const event& b) {
    return a.value == b.value && a.meta == b.meta;
  }
  friend bool operator!=(const event& a, const event& b) { return !(a == b); }
};

template <class A>
event<A> at(A value, time_point t) {
  return {std::move(value), interval::at(t)};
}

template <class A>
using mailbox = std::vector<event<A>>;

// Typed handle naming an input position's element type.
template <class A>
struct source {};

// --- store operations --------------------------------------------------------

// Per-position copies of all mailboxes, in position order.
template <hseq Store>
Store snapshot(const Store& store) {
  return store;
}

// A snapshot with position I replaced by the singleton buffer holding x.
template <std::size_t I, hseq Store, class A>
  requires in_bounds<I, Store>
Store snapshot_focused(const Store& store, const event<A>& x) {
  return replace_at<I>(store, mailbox<A>{x});
}

// Feeds every tuple of one event per mailbox to the consumer. Position 0
// varies slowest; FIFO order within each mailbox; an empty mailbox yields no
// tuples.
template <class F>
void crossproduct(const hnil_t&, F&& consumer) {
  consumer(hnil_t{});
}

template <class A, class Tail, class F>
void crossproduct(const hcons_t<mailbox<A>, Tail>& boxes, F&& consumer) {
  for (const event<A>& e : boxes.head) {
    crossproduct(boxes.tail, [&](const auto& rest) { consumer(hcons(e, rest)); });
  }
}

// --- pattern evaluation ------------------------------------------------------

// Pattern denotation: the value produced for one candidate tuple, or nothing
// when a where clause rejected it.
template <class C>
struct pat_value {
  using value_type = C;
  std::optional<C> value;
};

// Evaluates the pattern body on one tuple of events. A successful match
// carries the merge of all input intervals; the body never supplies it.
template <class Body, class H, class T>
auto match_tuple(const Body& body, const hcons_t<H, T>& tuple) {
  using result = std::invoke_result_t<const Body&, const hcons_t<H, T>&>;
  using out_value = typename result::value_type;

  std::vector<interval> metas;
  metas.reserve(hcons_t<H, T>::length);
  hfor_each([&](const auto& ev) { metas.push_back(ev.meta); }, tuple);
  const interval merged = merge_all(metas);

  result r = body(tuple);
  std::optional<event<out_value>> out;
  if (r.value) out.emplace(event<out_value>{std::move(*r.value), merged});
  return out;
}

// --- restriction descriptors and interceptors ---------------------------------

template <std::size_t P>
struct most_recently_t {};

// Restricts position P to its most recent event: each push at P empties the
// mailbox before forwarding, so the default callback crosses the new event
// alone and stores it as the sole buffered one.
template <std::size_t P>
constexpr most_recently_t<P> most_recently(index_t<P>) {
  return {};
}

template <std::size_t... Ps>
struct aligning_t {
  static_assert(sizeof...(Ps) >= 2, "aligning: needs at least two positions");
};

// Consumes the given positions in lockstep (zip): pushes at aligned positions
// are queued instead of stored, and whenever every aligned queue is nonempty
// one head per position is dequeued and crossed with the mailboxes of the
// remaining positions.
template <std::size_t... Ps>
  requires(sizeof...(Ps) >= 2)
constexpr aligning_t<Ps...> aligning(index_set_t<Ps...>) {
  return {};
}

template <std::size_t P>
struct most_recently_interceptor {
  template <std::size_t I, class A, class Ops, class Emitted, class Next>
  void on_push(const event<A>& x, Ops& ops, Emitted&, Next&& next) {
    if constexpr (I == P) ops.template replace_mailbox<P>({});
    next(x);
  }
};

template <class Shape, std::size_t... Ps>
struct aligning_interceptor {
  static constexpr std::array<std::size_t, sizeof...(Ps)> positions{Ps...};
  std::tuple<std::deque<event<element_at_t<Ps, Shape>>>...> queues;

  static constexpr std::size_t slot_of(std::size_t position) {
    for (std::size_t k = 0; k < positions.size(); ++k)
      if (positions[k] == position) return k;
    return positions.size();
  }

  template <std::size_t I, class A, class Ops, class Emitted, class Next>
  void on_push(const event<A>& x, Ops& ops, Emitted& emitted, Next&& next) {
    if constexpr (((I == Ps) || ...)) {
      std::get<slot_of(I)>(queues).push_back(x);
      while (all_queued()) round(ops, emitted);
      // suppressed: aligned pushes never reach the default callback
    } else {
      next(x);
    }
  }

 private:
  bool all_queued() const {
    return std::apply([](const auto&... q) { return (!q.empty() && ...); }, queues);
  }

  // One synchronized round. The dequeued heads are consumed whether or not
  // the matcher accepts any tuple.
  template <class Ops, class Emitted>
  void round(Ops& ops, Emitted& emitted) {
    auto boxes = ops.snapshot();
    [&]<std::size_t... Ks>(std::index_sequence<Ks...>) {
      ((boxes = replace_at<positions[Ks]>(boxes, take_head<Ks>())), ...);
    }(std::make_index_sequence<sizeof...(Ps)>{});
    ops.cross_and_emit(boxes, emitted);
  }

  template <std::size_t K>
  auto take_head() {
    auto& q = std::get<K>(queues);
    mailbox<element_at_t<positions[K], Shape>> singleton{q.front()};
    q.pop_front();
    return singleton;
  }
};

// Whether an extension descriptor's position demands fit a join shape. A
// descriptor demanding positions beyond the shape is rejected before any
// data flows.
template <class Shape, class E>
struct ext_fits : std::false_type {};
template <class Shape>
struct ext_fits<Shape, enil_t> : std::true_type {};
template <class Shape, std::size_t P>
struct ext_fits<Shape, most_recently_t<P>> : std::bool_constant<(P < Shape::length)> {};
template <class Shape, std::size_t... Ps>
struct ext_fits<Shape, aligning_t<Ps...>>
    : std::bool_constant<((Ps < Shape::length) && ...)> {};
template <class Shape, class X, class Y>
struct ext_fits<Shape, ext_merge_t<X, Y>>
    : std::bool_constant<ext_fits<Shape, X>::value && ext_fits<Shape, Y>::value> {};

template <class Shape, class E>
inline constexpr bool ext_fits_v = ext_fits<Shape, std::remove_cvref_t<E>>::value;

namespace detail {

template <class Shape>
inline std::tuple<> compile_chain(const enil_t&) {
  return {};
}

template <class Shape, std::size_t P>
  requires ext_fits_v<Shape, most_recently_t<P>>
auto compile_chain(const most_recently_t<P>&) {
  return std::tuple<most_recently_interceptor<P>>{};
}

template <class Shape, std::size_t... Ps>
  requires ext_fits_v<Shape, aligning_t<Ps...>>
auto compile_chain(const aligning_t<Ps...>&) {
  return std::tuple<aligning_interceptor<Shape, Ps...>>{};
}

// The right operand is composed innermost, so its interceptors come first.
template <class Shape, class X, class Y>
  requires ext_fits_v<Shape, ext_merge_t<X, Y>>
auto compile_chain(const ext_merge_t<X, Y>& e) {
  return std::tuple_cat(compile_chain<Shape>(e.second), compile_chain<Shape>(e.first));
}

template <class Seq, class... As>
struct notification_variant;

template <std::size_t I, class A>
struct from_source {
  static constexpr std::size_t source_index = I;
  event<A> ev;
};

template <std::size_t... Is, class... As>
struct notification_variant<std::index_sequence<Is...>, As...> {
  using type = std::variant<from_source<Is, As>...>;
};

}  // namespace detail

// --- the running correlation ---------------------------------------------------

template <class Body, class Chain, class... As>
class join_instance {
 public:
  static constexpr std::size_t arity = sizeof...(As);
  static_assert(arity >= 1, "join_instance: requires at least one source");

  using shape = hseq_of<As...>;
  template <std::size_t I>
  using element = element_at_t<I, shape>;
  using store_type = hseq_of<mailbox<As>...>;
  using vars = hseq_of<event<As>...>;
  using pattern_result = std::invoke_result_t<const Body&, const vars&>;
  using output_type = typename pattern_result::value_type;
  using output_event = event<output_type>;

  // One notification: an event tagged with the position it arrived on.
  using notification =
      typename detail::notification_variant<std::index_sequence_for<As...>, As...>::type;

  join_instance(Body body, Chain chain) : body_(std::move(body)), chain_(std::move(chain)) {}

  template <std::size_t I>
  static notification notify(event<element<I>> ev) {
    return detail::from_source<I, element<I>>{std::move(ev)};
  }

  static std::size_t source_of(const notification& n) {
    return std::visit([](const auto& f) -> std::size_t { return f.source_index; }, n);
  }

  static time_point time_of(const notification& n) {
    return std::visit([](const auto& f) { return f.ev.meta.lo; }, n);
  }

  // Delivers one event to position I: interceptor chain first, then the
  // default callback. Returns the events emitted during this transition.
  template <std::size_t I>
  std::vector<output_event> push(const event<element<I>>& x) {
    static_assert(I < arity);
    std::vector<output_event> emitted;
    chain_step<0, I>(x, emitted);
    return emitted;
  }

  std::vector<output_event> step(const notification& n) {
    return std::visit(
        [&](const auto& f) { return push<std::decay_t<decltype(f)>::source_index>(f.ev); }, n);
  }

  // Folds step over the trace in the given order.
  std::vector<output_event> drive(std::span<const notification> trace) {
    std::vector<output_event> out;
    for (const notification& n : trace) {
      auto emitted = step(n);
      out.insert(out.end(), std::make_move_iterator(emitted.begin()),
                 std::make_move_iterator(emitted.end()));
    }
    return out;
  }

  // Replays a trace that is totally ordered by (time, source index); ties
  // broken by the lower source. Rejects unsorted traces.
  std::vector<output_event> run_replay(std::span<const notification> trace) {
    for (std::size_t i = 1; i < trace.size(); ++i) {
      const auto ta = time_of(trace[i - 1]);
      const auto tb = time_of(trace[i]);
      if (tb < ta || (tb == ta && source_of(trace[i]) < source_of(trace[i - 1])))
        throw std::invalid_argument("run_replay: trace not sorted by (time, source)");
    }
    return drive(trace);
  }

  // All events emitted so far, in emission order.
  const std::vector<output_event>& outputs() const { return outputs_; }

  void on_output(std::function<void(const output_event&)> sink) { sink_ = std::move(sink); }

  // Interceptor operations. An interceptor given position set K must not
  // read or replace mailboxes outside K.
  template <std::size_t J>
  const mailbox<element<J>>& read_mailbox() const {
    return get<J>(mailboxes_);
  }

  template <std::size_t J>
  void replace_mailbox(mailbox<element<J>> m) {
    get<J>(mailboxes_) = std::move(m);
  }

  store_type snapshot() const { return mailboxes_; }

  const store_type& store() const { return mailboxes_; }

  void cross_and_emit(const store_type& boxes, std::vector<output_event>& emitted) {
    crossproduct(boxes, [&](const vars& tuple) {
      if (auto out = match_tuple(body_, tuple)) {
        outputs_.push_back(*out);
        emitted.push_back(*out);
        if (sink_) sink_(*out);
      }
    });
  }

 private:
  template <std::size_t K, std::size_t I, class A>
  void chain_step(const event<A>& x, std::vector<output_event>& emitted) {
    if constexpr (K == std::tuple_size_v<Chain>) {
      default_on_push<I>(x, emitted);
    } else {
      std::get<K>(chain_).template on_push<I>(
          x, *this, emitted, [&](const event<A>& y) { chain_step<K + 1, I>(y, emitted); });
    }
  }

  // Focused cross first, then store: the new event meets every buffered
  // combination exactly once and never pairs with itself.
  template <std::size_t I, class A>
  void default_on_push(const event<A>& x, std::vector<output_event>& emitted) {
    cross_and_emit(snapshot_focused<I>(mailboxes_, x), emitted);
    get<I>(mailboxes_).push_back(x);
  }

  Body body_;
  Chain chain_;
  store_type mailboxes_{};
  std::vector<output_event> outputs_;
  std::function<void(const output_event&)> sink_;
};

// --- the algebra ----------------------------------------------------------------

struct engine_algebra {
  template <class A>
  struct binding {
    using element_type = A;
    using var_type = event<A>;
  };

  using meta = interval;

  // context formation; each bound variable carries (value, meta)
  template <class A>
  binding<A> from(source<A>) const {
    return {};
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
  interval mmerge(const interval& a, const interval& b) const { return merge(a, b); }
  time_duration minutes(double x) const { return evjoin::minutes(x); }
  bool within(const interval& a, const interval& b, time_duration bound) const {
    return evjoin::within(a, b, bound);
  }

  // patterns
  template <class C>
  pat_value<C> yield(C v) const {
    return {std::optional<C>(std::move(v))};
  }
  template <class C>
  pat_value<C> where(bool cond, pat_value<C> body) const {
    return cond ? std::move(body) : pat_value<C>{};
  }

  // extensions
  enil_t enil() const { return evjoin::enil(); }
  template <class X, class Y>
  ext_merge_t<X, Y> ext_merge(X x, Y y) const {
    return evjoin::ext_merge(std::move(x), std::move(y));
  }
  template <std::size_t P>
  most_recently_t<P> most_recently(index_t<P> p) const {
    return evjoin::most_recently(p);
  }
  template <std::size_t... Ps>
  aligning_t<Ps...> aligning(index_set_t<Ps...> ps) const {
    return evjoin::aligning(ps);
  }

  // The body must accept exactly the translated variable tuple, the engine
  // needs at least one bound source, and the extension's position demands
  // must fit the join shape.
  template <context C, class Ext, class Body>
    requires matches_context<Body, C> && (std::remove_cvref_t<C>::length >= 1) &&
             ext_fits_v<context_shape_t<C>, Ext>
  auto join(const C&, Ext ext, Body body) const {
    return make_instance(context_elements_t<C>{}, std::move(body), std::move(ext));
  }

 private:
  template <class... Es, class Body, class Ext>
  static auto make_instance(detail::type_pack<Es...>, Body body, Ext ext) {
    using instance_shape = hseq_of<Es...>;
    auto chain = detail::compile_chain<instance_shape>(ext);
    return join_instance<Body, decltype(chain), Es...>(std::move(body), std::move(chain));
  }
};

// --- concurrent driving ----------------------------------------------------------

template <class Inst>
struct concurrent_result {
  std::vector<typename Inst::notification> trace;  // the serialization observed
  std::vector<typename Inst::output_event> outputs;
};

// Drives the instance from one producer per source. Each feed is a callable
// receiving a typed emit function and must deliver its source's events in
// nondecreasing time order. Feeds run on their own threads; arrivals are
// serialized into a single total order and stepped as they come, so no feed
// ever waits on another's production. The outputs equal drive() over the
// returned serialization on a freshly built identical instance.
template <class Inst, class... Feeds>
concurrent_result<Inst> run_concurrent(Inst& instance, Feeds&&... feeds) {
  static_assert(sizeof...(Feeds) == Inst::arity, "run_concurrent: one feed per source");
  using notification = typename Inst::notification;

  std::mutex m;
  std::condition_variable cv;
  std::deque<notification> pending;
  std::size_t active = sizeof...(Feeds);

  auto enqueue = [&](notification n) {
    {
      std::lock_guard lk(m);
      pending.push_back(std::move(n));
    }
    cv.notify_one();
  };

  std::vector<std::thread> workers;
  workers.reserve(sizeof...(Feeds));
  auto launch = [&]<std::size_t I, class Feed>(std::integral_constant<std::size_t, I>,
                                               Feed& feed) {
    workers.emplace_back([&] {
      feed([&](event<typename Inst::template element<I>> ev) {
        enqueue(Inst::template notify<I>(std::move(ev)));
      });
      {
        std::lock_guard lk(m);
        --active;
      }
      cv.notify_one();
    });
  };
  [&]<std::size_t... Is>(std::index_sequence<Is...>) {
    (launch(std::integral_constant<std::size_t, Is>{}, feeds), ...);
  }(std::index_sequence_for<Feeds...>{});

  concurrent_result<Inst> result;
  for (;;) {
    std::unique_lock lk(m);
    cv.wait(lk, [&] { return !pending.empty() || active == 0; });
    if (pending.empty()) {
      if (active == 0) break;
      continue;
    }
    notification n = std::move(pending.front());
    pending.pop_front();
    lk.unlock();
    result.trace.push_back(n);
    auto emitted = instance.step(n);
    result.outputs.insert(result.outputs.end(), std::make_move_iterator(emitted.begin()),
                          std::make_move_iterator(emitted.end()));
  }
  for (auto& w : workers) w.join();
  return result;
}

}  // namespace evjoin
