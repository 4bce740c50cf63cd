"""Jaro and Jaro-Winkler string similarity."""


def jaro(a, b):
    if not a or not b:
        return 0.0
    if a == b:
        return 1.0
    la, lb = len(a), len(b)
    window = max(0, max(la, lb) // 2 - 1)
    matched_b = [False] * lb
    a_matches = []
    for i, ca in enumerate(a):
        lo, hi = max(0, i - window), min(lb, i + window + 1)
        for j in range(lo, hi):
            if not matched_b[j] and b[j] == ca:
                matched_b[j] = True
                a_matches.append(ca)
                break
    m = len(a_matches)
    if m == 0:
        return 0.0
    b_matches = [b[j] for j in range(lb) if matched_b[j]]
    transpositions = sum(x != y for x, y in zip(a_matches, b_matches)) // 2
    return (m / la + m / lb + (m - transpositions) / m) / 3.0


def jaro_winkler(a, b, prefix_scale=0.1, max_prefix=4, boost_threshold=0.7):
    """Jaro-Winkler similarity in [0, 1].

    The common-prefix bonus is only applied when the Jaro similarity
    exceeds ``boost_threshold``, as in Winkler's definition.

    >>> round(jaro_winkler("MARTHA", "MARHTA"), 4)
    0.9611
    """
    sim = jaro(a, b)
    if sim <= boost_threshold:
        return sim
    prefix = 0
    for x, y in zip(a[:max_prefix], b[:max_prefix]):
        if x != y:
            break
        prefix += 1
    return sim + prefix * prefix_scale * (1.0 - sim)
