from concurrent.futures import ThreadPoolExecutor


def parallel_map(fn, items, jobs=1):
    """Ordered map over ``items`` using up to ``jobs`` threads.

    Results come back in input order, so any reduction done by the caller
    is independent of the schedule.
    """
    items = list(items)
    if jobs is None or jobs <= 1 or len(items) <= 1:
        return [fn(item) for item in items]
    with ThreadPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, items))
