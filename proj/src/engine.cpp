// yulsem: executable operational semantics for Yul
// Copyright 2026 The yulsem Authors.
// SPDX-License-Identifier: Apache-2.0

#include <yulsem/engine.hpp>

#include <pthread.h>

#include <exception>

namespace yulsem
{
namespace
{
void merge_counter(PropertyCounter& into, const PropertyCounter& from) noexcept
{
    into.checks += from.checks;
    into.violations += from.violations;
}

struct ThreadTask
{
    const std::function<void()>* fn;
    std::exception_ptr error;
};

void* thread_main(void* arg)
{
    auto* task = static_cast<ThreadTask*>(arg);
    try
    {
        (*task->fn)();
    }
    catch (...)
    {
        task->error = std::current_exception();
    }
    return nullptr;
}
}  // namespace

void LemmaMonitor::merge(const LemmaMonitor& o) noexcept
{
    merge_counter(store_lower_bound, o.store_lower_bound);
    merge_counter(loop_domain, o.loop_domain);
    merge_counter(loop_containment, o.loop_containment);
    merge_counter(expression_store, o.expression_store);
}

uint64_t LemmaMonitor::total_violations() const noexcept
{
    return store_lower_bound.violations + loop_domain.violations + loop_containment.violations +
           expression_store.violations;
}

uint64_t LemmaMonitor::total_checks() const noexcept
{
    return store_lower_bound.checks + loop_domain.checks + loop_containment.checks + expression_store.checks;
}

void run_with_stack(const std::function<void()>& fn, size_t stack_bytes)
{
    pthread_attr_t attr;
    pthread_attr_init(&attr);
    pthread_attr_setstacksize(&attr, stack_bytes);
    ThreadTask task{&fn, nullptr};
    pthread_t thread;
    if (pthread_create(&thread, &attr, &thread_main, &task) != 0)
    {
        pthread_attr_destroy(&attr);
        fn();
        return;
    }
    pthread_attr_destroy(&attr);
    pthread_join(thread, nullptr);
    if (task.error)
        std::rethrow_exception(task.error);
}
}  // namespace yulsem
