#include "hyperarr/series.hpp"

namespace hyperarr {

template class TruncatedSeries<Integer>;
template class TruncatedSeries<Rational>;

}  // namespace hyperarr
