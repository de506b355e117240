#include "nbekcf/parallel.hpp"

#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <thread>
#include <vector>

namespace nbekcf {

namespace {

std::atomic<int> g_cap{-1};  // -1: unset, fall back to the environment

int env_cap() {
    const char* raw = std::getenv("NBEKCF_THREADS");
    if (raw == nullptr || *raw == '\0') {
        return 0;
    }
    char* end = nullptr;
    const long parsed = std::strtol(raw, &end, 10);
    if (end == raw || *end != '\0' || parsed < 0) {
        return 0;  // malformed values fall back to auto
    }
    return static_cast<int>(parsed);
}

int resolve_cap() {
    int cap = g_cap.load(std::memory_order_relaxed);
    if (cap < 0) {
        cap = env_cap();
    }
    if (cap == 0) {
        const unsigned hw = std::thread::hardware_concurrency();
        cap = hw == 0 ? 1 : static_cast<int>(hw);
    }
    return cap;
}

}  // namespace

int thread_cap() { return resolve_cap(); }

void set_thread_cap(int cap) {
    if (cap < 0) {
        throw std::invalid_argument("set_thread_cap: cap must be >= 0");
    }
    g_cap.store(cap, std::memory_order_relaxed);
}

void parallel_for(int begin, int end, const std::function<void(int)>& fn) {
    const int count = end - begin;
    if (count <= 0) {
        return;
    }
    int workers = resolve_cap();
    if (workers > count) {
        workers = count;
    }
    if (workers <= 1) {
        for (int i = begin; i < end; ++i) {
            fn(i);
        }
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(workers);
    const int chunk = (count + workers - 1) / workers;
    for (int w = 0; w < workers; ++w) {
        const int lo = begin + w * chunk;
        const int hi = lo + chunk < end ? lo + chunk : end;
        if (lo >= hi) {
            break;
        }
        pool.emplace_back([lo, hi, &fn] {
            for (int i = lo; i < hi; ++i) {
                fn(i);
            }
        });
    }
    for (auto& t : pool) {
        t.join();
    }
}

}  // namespace nbekcf
