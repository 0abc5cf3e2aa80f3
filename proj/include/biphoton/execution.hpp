#pragma once

namespace biphoton
{
/// Kernel selection: serial reference loop or OpenMP data-parallel loop.
/// Both produce bit-identical results.
enum class Execution
{
    serial,
    parallel
};
}  // namespace biphoton
