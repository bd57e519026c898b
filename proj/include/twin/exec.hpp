#pragma once

#include <exception>
#include <mutex>

namespace twin {

// Every parallel kernel keeps a serial path; tests compare the two and the benchmark times them.
enum class Exec { serial, parallel };

template <class F>
void for_each_index(int n, Exec ex, F&& f) {
    if (ex == Exec::serial) {
        for (int i = 0; i < n; ++i) f(i);
        return;
    }
    std::exception_ptr err;
    std::mutex mu;
#pragma omp parallel for schedule(dynamic)
    for (int i = 0; i < n; ++i) {
        try {
            f(i);
        } catch (...) {
            std::lock_guard<std::mutex> lock(mu);
            if (!err) err = std::current_exception();
        }
    }
    if (err) std::rethrow_exception(err);
}

}  // namespace twin
