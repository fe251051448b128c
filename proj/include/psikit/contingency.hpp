#pragma once

#include <cstdint>

namespace psikit {

using Count = std::uint64_t;

struct Marginals {
  Count forecast_up = 0;    // a + b
  Count forecast_down = 0;  // c + d
  Count observed_up = 0;    // a + c
  Count observed_down = 0;  // b + d
  Count n = 0;

  friend bool operator==(const Marginals&, const Marginals&) = default;
};

/// 2x2 table of forecast vs observed directions.
///
///                    observed Up   observed Down
///   forecast Up          a              b
///   forecast Down        c              d
///
/// Cells are exact counts. A table is only constructible through
/// `from_counts`, which rejects the all-zero table; tables with a zero
/// marginal (constant forecasters) are valid and the scores define their
/// own conventions for them.
class ContingencyTable {
 public:
  static ContingencyTable from_counts(Count hits, Count false_alarms,
                                      Count misses, Count correct_rejections);

  Count hits() const noexcept { return a_; }
  Count false_alarms() const noexcept { return b_; }
  Count misses() const noexcept { return c_; }
  Count correct_rejections() const noexcept { return d_; }

  // Short aliases matching the usual a/b/c/d notation.
  Count a() const noexcept { return a_; }
  Count b() const noexcept { return b_; }
  Count c() const noexcept { return c_; }
  Count d() const noexcept { return d_; }

  Count n() const noexcept { return a_ + b_ + c_ + d_; }

  friend bool operator==(const ContingencyTable&,
                         const ContingencyTable&) = default;

 private:
  ContingencyTable(Count a, Count b, Count c, Count d)
      : a_(a), b_(b), c_(c), d_(d) {}

  Count a_;
  Count b_;
  Count c_;
  Count d_;
};

Marginals marginals(const ContingencyTable& t) noexcept;

/// Cellwise sum, e.g. for pooling sub-periods.
ContingencyTable merge(const ContingencyTable& lhs, const ContingencyTable& rhs);

}  // namespace psikit
