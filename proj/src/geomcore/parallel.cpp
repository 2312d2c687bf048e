#include "symineq/geomcore/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace symineq
{
int thread_count()
{
    if (const char* env = std::getenv("SYMINEQ_THREADS"))
    {
        try
        {
            int n = std::stoi(env);
            if (n >= 1)
                return std::min(n, 256);
        }
        catch (const std::exception&)
        {
        }
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

namespace
{
void run_tasks(std::size_t tasks, const std::function<void(std::size_t)>& task)
{
    const std::size_t workers = std::min<std::size_t>(static_cast<std::size_t>(thread_count()), tasks);
    if (workers <= 1)
    {
        for (std::size_t t = 0; t < tasks; ++t)
            task(t);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w)
        pool.emplace_back([&] {
            for (;;)
            {
                std::size_t t = next.fetch_add(1);
                if (t >= tasks)
                    return;
                try
                {
                    task(t);
                }
                catch (...)
                {
                    std::lock_guard lock(error_mutex);
                    if (!error)
                        error = std::current_exception();
                }
            }
        });
    for (auto& th : pool)
        th.join();
    if (error)
        std::rethrow_exception(error);
}
}  // namespace

void parallel_blocks(std::size_t n, std::size_t blocks,
                     const std::function<void(std::size_t, std::size_t, std::size_t)>& body)
{
    if (n == 0)
        return;
    blocks = std::max<std::size_t>(1, std::min(blocks, n));
    run_tasks(blocks, [&](std::size_t b) {
        std::size_t begin = n * b / blocks;
        std::size_t end = n * (b + 1) / blocks;
        body(b, begin, end);
    });
}

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body)
{
    run_tasks(n, body);
}

}  // namespace symineq
