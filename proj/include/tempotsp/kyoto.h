#ifndef TEMPOTSP_KYOTO_H
#define TEMPOTSP_KYOTO_H

#include "tempotsp/tdtsp.h"

namespace tempotsp {

// Bundled seven-landmark Kyoto instance: per-period travel weights,
// congestion levels, and stay times, on the 8:00-18:00 grid with 120-minute
// periods. v0 (Shijo Kawaramachi) is the depot.
TimeDependentGraph kyoto_fixture();

}  // namespace tempotsp

#endif  // TEMPOTSP_KYOTO_H
