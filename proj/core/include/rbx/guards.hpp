#pragma once

namespace rbx {

// Resource limits for operations whose output can grow quickly.
// Tensor-word lengths add under the shuffle product, so a limit converts
// blowup into a clean GuardError instead of an out-of-memory run.
struct Guards {
    int max_word_len = 16;
    long long max_steps = 100000;
};

} // namespace rbx
