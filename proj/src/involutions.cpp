#include "vkg/involutions.hpp"

#include <atomic>
#include <bit>
#include <mutex>
#include <stdexcept>
#include <thread>

namespace vkg {

std::uint32_t QuadraticMap::eval(std::uint32_t y) const {
    std::uint32_t r = 0;
    std::uint32_t bits = y;
    while (bits) {
        int i = std::countr_zero(bits);
        bits &= bits - 1;
        r ^= sq[i];
        std::uint32_t rest = bits;  // j > i
        while (rest) {
            int j = std::countr_zero(rest);
            rest &= rest - 1;
            r ^= cross[i][j];
        }
    }
    return r;
}

QuadraticMap build_quadratic_map(const MulTables& t) {
    std::vector<Alg> basis;
    for (int g = 1; g < t.order; ++g) basis.push_back((1u << g) | 1u);
    return build_quadratic_map(t, basis);
}

QuadraticMap build_quadratic_map(const MulTables& t, std::span<const Alg> basis) {
    QuadraticMap q;
    q.m = static_cast<int>(basis.size());
    if (q.m != t.order - 1)
        throw std::invalid_argument("build_quadratic_map: basis must span I (|G|-1 vectors)");
    for (int i = 0; i < q.m; ++i) {
        q.sq[i] = nat_coords(multiply(basis[i], basis[i], t));
        for (int j = 0; j < q.m; ++j) {
            if (i == j) continue;
            Alg s = multiply(basis[i], basis[j], t) ^ multiply(basis[j], basis[i], t);
            q.cross[i][j] = nat_coords(s);
        }
    }
    return q;
}

std::vector<CountTask> make_tasks(int m, int split_bits) {
    if (split_bits < 0) split_bits = 0;
    if (split_bits > m) split_bits = m;
    std::vector<CountTask> tasks(std::size_t(1) << split_bits);
    for (std::size_t t = 0; t < tasks.size(); ++t) {
        tasks[t].fixed_bits = static_cast<std::uint32_t>(t) << (m - split_bits);
        tasks[t].free_bits = m - split_bits;
    }
    return tasks;
}

namespace {

// Gray-code walk over one coset.  State: R = Q(y) and the accumulators
// c[i] = sum_{j in y} cross[j][i].  Flipping bit k (either direction, the
// diagonal is zero) updates R ^= sq[k] ^ c[k] with the pre-flip c, then
// folds row k into every accumulator.
std::int64_t run_task(const QuadraticMap& q, CountTask& task) {
    const int f = task.free_bits;
    std::uint32_t y = task.fixed_bits;
    std::uint32_t r = q.eval(y);

    alignas(64) std::uint32_t c[32] = {0};
    {
        std::uint32_t bits = y;
        while (bits) {
            int j = std::countr_zero(bits);
            bits &= bits - 1;
            for (int i = 0; i < f; ++i) c[i] ^= q.cross[j][i];
        }
    }

    std::int64_t zeros = (r == 0) ? 1 : 0;
    const std::uint64_t steps = (std::uint64_t(1) << f) - 1;
    for (std::uint64_t t = 1; t <= steps; ++t) {
        const int k = std::countr_zero(t);
        r ^= q.sq[k] ^ c[k];
        const std::uint32_t* row = q.cross[k].data();
        for (int i = 0; i < f; ++i) c[i] ^= row[i];
        y ^= 1u << k;
        zeros += (r == 0);
    }

    // state integrity: the final point must agree with a fresh evaluation
    if (r != q.eval(y))
        throw std::runtime_error("count_involutions: Gray-code state diverged");

    task.partial_count = zeros;
    return zeros;
}

std::int64_t count_zeros(const QuadraticMap& q, const CountOptions& opt) {
    auto tasks = make_tasks(q.m, opt.split_bits);
    const int nthreads = std::max(1, std::min<int>(opt.threads, static_cast<int>(tasks.size())));

    if (nthreads == 1) {
        std::uint64_t points = 0;
        int done = 0;
        for (auto& task : tasks) {
            run_task(q, task);
            points += std::uint64_t(1) << task.free_bits;
            ++done;
            if (opt.progress) opt.progress(points, done);
        }
    } else {
        std::atomic<std::size_t> next{0};
        std::atomic<std::uint64_t> points{0};
        std::atomic<int> done{0};
        std::exception_ptr error;
        std::mutex error_mu;
        auto worker = [&] {
            for (;;) {
                std::size_t i = next.fetch_add(1);
                if (i >= tasks.size()) return;
                try {
                    run_task(q, tasks[i]);
                } catch (...) {
                    std::lock_guard<std::mutex> lk(error_mu);
                    if (!error) error = std::current_exception();
                    return;
                }
                std::uint64_t p = points.fetch_add(std::uint64_t(1) << tasks[i].free_bits) +
                                  (std::uint64_t(1) << tasks[i].free_bits);
                int d = done.fetch_add(1) + 1;
                if (opt.progress) opt.progress(p, d);
            }
        };
        std::vector<std::thread> pool;
        for (int i = 0; i < nthreads; ++i) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
        if (error) std::rethrow_exception(error);
    }

    // deterministic reduction in task-index order
    std::int64_t total = 0;
    for (const auto& task : tasks) total += task.partial_count;
    return total;
}

}  // namespace

std::int64_t count_involutions(const QuadraticMap& q, const CountOptions& opt) {
    return count_zeros(q, opt) - 1;  // y = 0 is not an involution
}

std::int64_t oracle_count_involutions(const MulTables& t, bool allow_large) {
    if (t.order > 16 && !allow_large)
        throw std::invalid_argument("oracle_count_involutions: refusing |G| > 16 (override for benchmarking)");
    const std::uint64_t n = std::uint64_t(1) << (t.order - 1);
    std::int64_t count = 0;
    for (std::uint64_t c = 1; c < n; ++c) {
        Alg u = from_nat_coords(static_cast<std::uint32_t>(c)) ^ 1u;  // u = 1 + y
        if (multiply(u, u, t) == 1u) ++count;
    }
    return count;
}

std::int64_t count_order_dividing_4(const QuadraticMap& q, const CountOptions& opt) {
    auto tasks = make_tasks(q.m, opt.split_bits);
    const int nthreads = std::max(1, std::min<int>(opt.threads, static_cast<int>(tasks.size())));

    auto run = [&](CountTask& task) {
        const int f = task.free_bits;
        std::uint32_t y = task.fixed_bits;
        std::uint32_t r = q.eval(y);
        alignas(64) std::uint32_t c[32] = {0};
        std::uint32_t bits = y;
        while (bits) {
            int j = std::countr_zero(bits);
            bits &= bits - 1;
            for (int i = 0; i < f; ++i) c[i] ^= q.cross[j][i];
        }
        std::int64_t hits = (q.eval(r) == 0) ? 1 : 0;
        const std::uint64_t steps = (std::uint64_t(1) << f) - 1;
        for (std::uint64_t t2 = 1; t2 <= steps; ++t2) {
            const int k = std::countr_zero(t2);
            r ^= q.sq[k] ^ c[k];
            const std::uint32_t* row = q.cross[k].data();
            for (int i = 0; i < f; ++i) c[i] ^= row[i];
            hits += (q.eval(r) == 0);  // y^4 = Q(Q(y))
        }
        task.partial_count = hits;
    };

    if (nthreads == 1) {
        for (auto& task : tasks) run(task);
    } else {
        std::atomic<std::size_t> next{0};
        auto worker = [&] {
            for (;;) {
                std::size_t i = next.fetch_add(1);
                if (i >= tasks.size()) return;
                run(tasks[i]);
            }
        };
        std::vector<std::thread> pool;
        for (int i = 0; i < nthreads; ++i) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }

    std::int64_t total = 0;
    for (const auto& task : tasks) total += task.partial_count;
    return total;
}

}  // namespace vkg
