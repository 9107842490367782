def pairings(n):
    """All perfect matchings of ``{1..n}``.

    Each matching is a tuple of sorted pairs ordered by first element; odd ``n`` has none.

    :rtype: list
    """
    if n < 0:
        raise ValueError("Invalid value for `n`, must be a value greater than or equal to `0`")
    if n % 2:
        return []
    return list(_match(tuple(range(1, n + 1))))


def _match(items):
    if not items:
        yield ()
        return
    first, rest = items[0], items[1:]
    for k, partner in enumerate(rest):
        for tail in _match(rest[:k] + rest[k + 1:]):
            yield ((first, partner),) + tail


def count_pairings(n):
    """``n! / (2^k k!)`` for ``n = 2k``, zero for odd ``n``."""
    if n % 2:
        return 0
    total = 1
    for odd in range(n - 1, 0, -2):
        total *= odd
    return total
