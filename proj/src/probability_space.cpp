#include "bellscope/probability_space.hpp"

#include <cmath>

namespace bellscope {

bool Event::empty() const {
  for (bool b : bits_)
    if (b) return false;
  return true;
}

std::vector<std::size_t> Event::members() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < bits_.size(); ++i)
    if (bits_[i]) out.push_back(i);
  return out;
}

Event Event::operator&(const Event& rhs) const {
  if (universe() != rhs.universe()) throw Error(ErrorCode::dimension_mismatch, "events from different spaces");
  Event out(universe());
  for (std::size_t i = 0; i < bits_.size(); ++i) out.bits_[i] = bits_[i] && rhs.bits_[i];
  return out;
}

Event Event::operator|(const Event& rhs) const {
  if (universe() != rhs.universe()) throw Error(ErrorCode::dimension_mismatch, "events from different spaces");
  Event out(universe());
  for (std::size_t i = 0; i < bits_.size(); ++i) out.bits_[i] = bits_[i] || rhs.bits_[i];
  return out;
}

Event Event::complement() const {
  Event out(universe());
  for (std::size_t i = 0; i < bits_.size(); ++i) out.bits_[i] = !bits_[i];
  return out;
}

FiniteProbSpace::FiniteProbSpace(std::vector<std::string> labels, std::vector<Scalar> weights)
    : labels_(std::move(labels)), weights_(std::move(weights)), mode_(ArithmeticMode::exact) {
  if (labels_.size() != weights_.size() || labels_.empty())
    throw Error(ErrorCode::invalid_vector, "a probability space needs one weight per atom and at least one atom");
  mode_ = weights_.front().mode();
  require_mode(weights_, mode_);
  Scalar total = Scalar::zero(mode_);
  for (std::size_t a = 0; a < weights_.size(); ++a) {
    if (weights_[a].sign() < 0)
      throw Error(ErrorCode::not_convex, "atom " + labels_[a] + " has negative weight " + weights_[a].to_string());
    total += weights_[a];
  }
  const bool normalized = mode_ == ArithmeticMode::exact ? total.is_one()
                                                          : std::abs(total.to_double() - 1.0) <= kFloatNormalization;
  if (!normalized) throw Error(ErrorCode::not_convex, "atom weights sum to " + total.to_string());
}

Event FiniteProbSpace::where(const std::function<bool(std::size_t)>& predicate) const {
  Event e(size());
  for (std::size_t a = 0; a < size(); ++a)
    if (predicate(a)) e.insert(a);
  return e;
}

void FiniteProbSpace::define_event(const std::string& name, Event e) {
  if (e.universe() != size()) throw Error(ErrorCode::dimension_mismatch, "event " + name + " has wrong universe");
  events_.insert_or_assign(name, std::move(e));
}

const Event& FiniteProbSpace::event(const std::string& name) const {
  auto it = events_.find(name);
  if (it == events_.end()) throw Error(ErrorCode::invalid_vector, "no event named " + name);
  return it->second;
}

Scalar FiniteProbSpace::probability(const Event& e) const {
  if (e.universe() != size()) throw Error(ErrorCode::dimension_mismatch, "event from a different space");
  Scalar total = Scalar::zero(mode_);
  for (std::size_t a = 0; a < size(); ++a)
    if (e.contains(a)) total += weights_[a];
  return total;
}

Scalar FiniteProbSpace::conditional(const Event& x, const Event& given) const {
  Scalar denom = probability(given);
  if (denom.sign() <= 0) throw Error(ErrorCode::zero_probability, "conditioning on a zero-probability event");
  return probability(x & given) / denom;
}

}  // namespace bellscope
