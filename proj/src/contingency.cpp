#include "psikit/contingency.hpp"

#include "psikit/error.hpp"

namespace psikit {

ContingencyTable ContingencyTable::from_counts(Count hits, Count false_alarms,
                                               Count misses,
                                               Count correct_rejections) {
  if (hits == 0 && false_alarms == 0 && misses == 0 &&
      correct_rejections == 0) {
    throw Error(ErrorCode::AllZero,
                "contingency table has no observations (a=b=c=d=0)");
  }
  return ContingencyTable(hits, false_alarms, misses, correct_rejections);
}

Marginals marginals(const ContingencyTable& t) noexcept {
  return Marginals{t.a() + t.b(), t.c() + t.d(), t.a() + t.c(), t.b() + t.d(),
                   t.n()};
}

ContingencyTable merge(const ContingencyTable& lhs,
                       const ContingencyTable& rhs) {
  return ContingencyTable::from_counts(lhs.a() + rhs.a(), lhs.b() + rhs.b(),
                                       lhs.c() + rhs.c(), lhs.d() + rhs.d());
}

}  // namespace psikit
