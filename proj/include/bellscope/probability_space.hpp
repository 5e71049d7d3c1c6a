#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "bellscope/scalar.hpp"

namespace bellscope {

/// A subset of the atoms of a finite probability space.
class Event {
 public:
  Event() = default;
  explicit Event(std::size_t universe) : bits_(universe, false) {}

  static Event all(std::size_t universe) {
    Event e(universe);
    e.bits_.assign(universe, true);
    return e;
  }

  std::size_t universe() const { return bits_.size(); }
  bool contains(std::size_t atom) const { return bits_[atom]; }
  void insert(std::size_t atom) { bits_[atom] = true; }
  bool empty() const;
  std::vector<std::size_t> members() const;

  Event operator&(const Event& rhs) const;
  Event operator|(const Event& rhs) const;
  Event complement() const;

  friend bool operator==(const Event&, const Event&) = default;

 private:
  std::vector<bool> bits_;
};

/// Weighted atoms plus named events. Weights are nonnegative and sum to one:
/// exactly in exact mode, within kFloatNormalization in float mode.
class FiniteProbSpace {
 public:
  static constexpr double kFloatNormalization = 1e-12;

  FiniteProbSpace(std::vector<std::string> labels, std::vector<Scalar> weights);

  std::size_t size() const { return labels_.size(); }
  ArithmeticMode mode() const { return mode_; }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::vector<Scalar>& weights() const { return weights_; }

  Event all() const { return Event::all(size()); }
  Event none() const { return Event(size()); }
  Event where(const std::function<bool(std::size_t)>& predicate) const;

  void define_event(const std::string& name, Event e);
  const Event& event(const std::string& name) const;
  const std::map<std::string, Event>& events() const { return events_; }

  Scalar probability(const Event& e) const;
  /// p(x | given); throws zero_probability when p(given) = 0.
  Scalar conditional(const Event& x, const Event& given) const;

 private:
  std::vector<std::string> labels_;
  std::vector<Scalar> weights_;
  ArithmeticMode mode_;
  std::map<std::string, Event> events_;
};

}  // namespace bellscope
