#pragma once

#include <cstddef>

namespace scdens {

enum class Exec { Serial, Parallel };

// Runs body(i) for i in [0, n). Each index writes only its own slot, so the
// result is independent of scheduling.
template <class Body>
void for_each_index(Exec exec, std::size_t n, Body&& body)
{
    const auto count = static_cast<long long>(n);
    if (exec == Exec::Parallel) {
#pragma omp parallel for schedule(dynamic, 4)
        for (long long i = 0; i < count; ++i) body(static_cast<std::size_t>(i));
    } else {
        for (long long i = 0; i < count; ++i) body(static_cast<std::size_t>(i));
    }
}

} // namespace scdens
