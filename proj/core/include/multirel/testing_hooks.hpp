#pragma once

namespace multirel::testing {

/// Mutation hook for the self-test: when on, the unit constant drops the
/// pair (a,{a}) for the first element and maps it to (a,∅) instead.
void set_corrupt_unit(bool on);
bool corrupt_unit();

}  // namespace multirel::testing
