#ifndef D2SIM_MESSAGE_HPP
#define D2SIM_MESSAGE_HPP

#include <cassert>
#include <cstdint>
#include <span>
#include <string>

#include <boost/container/small_vector.hpp>

namespace d2sim {

struct Field {
  const char* role;  // static label, used in dumps and debugging only
  std::uint64_t value;
  std::uint8_t width;  // bits, 1..64
};

// Tagged payload with declared per-field bit widths; the unit of bandwidth
// accounting. The tag costs 8 bits.
class Message {
 public:
  static constexpr int kTagBits = 8;

  Message() = default;
  explicit Message(std::uint8_t tag) : tag_(tag) {}

  Message& add(const char* role, std::uint64_t value, int width) {
    assert(width >= 1 && width <= 64);
    assert(width == 64 || value < (std::uint64_t{1} << width));
    fields_.push_back(Field{role, value, static_cast<std::uint8_t>(width)});
    payload_bits_ += width;
    return *this;
  }

  std::uint8_t tag() const { return tag_; }
  int total_bits() const { return kTagBits + payload_bits_; }
  int field_count() const { return static_cast<int>(fields_.size()); }
  std::span<const Field> fields() const { return {fields_.data(), fields_.size()}; }
  std::uint64_t value(int i) const { return fields_[i].value; }

  bool operator==(const Message& o) const {
    if (tag_ != o.tag_ || fields_.size() != o.fields_.size()) return false;
    for (std::size_t i = 0; i < fields_.size(); ++i) {
      if (fields_[i].value != o.fields_[i].value || fields_[i].width != o.fields_[i].width)
        return false;
    }
    return true;
  }

 private:
  std::uint8_t tag_ = 0;
  std::uint16_t payload_bits_ = 0;
  boost::container::small_vector<Field, 4> fields_;
};

// Per-edge per-round bit allowance B = c_B * ceil(log2 n), floored so one
// id plus a tag always fits.
struct BandwidthBudget {
  int bits_per_edge_per_round = 0;
  int multiplier = 8;

  static int ceil_log2(std::int64_t x) {
    int b = 0;
    while ((std::int64_t{1} << b) < x) ++b;
    return b;
  }

  static BandwidthBudget for_graph(int n, int multiplier) {
    BandwidthBudget budget;
    budget.multiplier = multiplier;
    int log_n = ceil_log2(n);
    budget.bits_per_edge_per_round =
        std::max(multiplier * log_n, log_n + Message::kTagBits);
    return budget;
  }
};

enum class BudgetVerdict { kOk, kViolation };

inline BudgetVerdict check_budget(const Message& msg, const BandwidthBudget& budget) {
  return msg.total_bits() <= budget.bits_per_edge_per_round ? BudgetVerdict::kOk
                                                            : BudgetVerdict::kViolation;
}

// Field widths shared by all protocols for a given (n, Δ, η) triple.
struct Widths {
  int id = 1;        // node id
  int color = 1;     // color in [0, Δ²]
  int hash = 1;      // hashed id in [η·Δ⁴)
  int local_id = 1;  // component-local id in [2Δ²]
  int priority = 16;
  int count = 1;     // generic count in [0, Δ²]

  static Widths from_graph(int n, int max_degree, int eta) {
    Widths w;
    std::int64_t d2 = std::int64_t{1} * max_degree * max_degree;
    w.id = std::max(1, BandwidthBudget::ceil_log2(n));
    w.color = std::max(1, BandwidthBudget::ceil_log2(d2 + 1));
    w.hash = std::max(1, BandwidthBudget::ceil_log2(std::max<std::int64_t>(2, eta * d2 * d2)));
    w.local_id = std::max(1, BandwidthBudget::ceil_log2(std::max<std::int64_t>(2, 2 * d2)));
    w.count = std::max(1, BandwidthBudget::ceil_log2(d2 + 1));
    return w;
  }
};

}  // namespace d2sim

#endif  // D2SIM_MESSAGE_HPP
