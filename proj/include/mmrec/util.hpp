#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <string_view>

namespace mmrec {

// FNV-1a, used for content-addressing pipeline stages.
std::uint64_t fnv1a(std::string_view bytes, std::uint64_t seed = 0xcbf29ce484222325ULL);

std::string hex64(std::uint64_t v);

// Runs fn(i) for i in [0, count). jobs <= 1 runs inline; results must not
// depend on execution order.
void parallel_for(std::size_t count, int jobs, const std::function<void(std::size_t)>& fn);

int default_jobs();

}  // namespace mmrec
