#include "demforge/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <condition_variable>
#include <cstdlib>
#include <mutex>
#include <thread>
#include <vector>

namespace demforge {
namespace {

int resolve_env_threads() {
    if (const char* env = std::getenv("DEMFORGE_THREADS")) {
        int n = std::atoi(env);
        if (n > 0) return n;
    }
    return 0;  // auto
}

std::atomic<int> g_requested{-1};  // -1 = not yet resolved

int effective_threads() {
    int req = g_requested.load(std::memory_order_relaxed);
    if (req == -1) {
        req = resolve_env_threads();
        g_requested.store(req, std::memory_order_relaxed);
    }
    if (req > 0) return req;
    unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? static_cast<int>(hw) : 1;
}

// Persistent pool. Workers idle on a condition variable between calls; the
// calling thread always executes chunk 0 itself.
class Pool {
  public:
    static Pool& instance() {
        static Pool pool;
        return pool;
    }

    void run(std::size_t n, int threads, const std::function<void(std::size_t, std::size_t)>& body) {
        ensure_workers(threads - 1);
        {
            std::unique_lock lock(mutex_);
            body_ = &body;
            n_ = n;
            chunks_ = threads;
            pending_ = threads - 1;
            ++generation_;
        }
        wake_.notify_all();
        run_chunk(0);
        std::unique_lock lock(mutex_);
        done_.wait(lock, [&] { return pending_ == 0; });
        body_ = nullptr;
    }

  private:
    void run_chunk(int chunk) {
        const std::size_t per = (n_ + chunks_ - 1) / chunks_;
        const std::size_t begin = per * static_cast<std::size_t>(chunk);
        const std::size_t end = std::min(n_, begin + per);
        if (begin < end) (*body_)(begin, end);
    }

    void ensure_workers(int needed) {
        while (static_cast<int>(workers_.size()) < needed) {
            int id = static_cast<int>(workers_.size()) + 1;
            workers_.emplace_back([this, id](std::stop_token stop) { worker_loop(id, stop); });
        }
    }

    void worker_loop(int id, std::stop_token stop) {
        std::uint64_t seen = 0;
        for (;;) {
            int chunks;
            {
                std::unique_lock lock(mutex_);
                wake_.wait(lock, stop, [&] { return generation_ != seen; });
                if (stop.stop_requested()) return;
                seen = generation_;
                chunks = chunks_;
            }
            if (id < chunks) {
                run_chunk(id);
                std::unique_lock lock(mutex_);
                if (--pending_ == 0) done_.notify_one();
            }
        }
    }

    std::mutex mutex_;
    std::condition_variable_any wake_;
    std::condition_variable_any done_;
    std::vector<std::jthread> workers_;
    const std::function<void(std::size_t, std::size_t)>* body_ = nullptr;
    std::size_t n_ = 0;
    int chunks_ = 1;
    int pending_ = 0;
    std::uint64_t generation_ = 0;
};

thread_local bool g_inside_parallel = false;

}  // namespace

int thread_count() { return effective_threads(); }

void set_thread_count(int n) { g_requested.store(n, std::memory_order_relaxed); }

void parallel_for(std::size_t n, const std::function<void(std::size_t, std::size_t)>& body) {
    if (n == 0) return;
    int threads = effective_threads();
    // Small ranges and nested calls run inline; spawning is never worth it there.
    if (threads <= 1 || n < 1024 || g_inside_parallel) {
        body(0, n);
        return;
    }
    if (static_cast<std::size_t>(threads) > n) threads = static_cast<int>(n);
    g_inside_parallel = true;
    Pool::instance().run(n, threads, body);
    g_inside_parallel = false;
}

}  // namespace demforge
