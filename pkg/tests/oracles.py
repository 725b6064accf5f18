"""Straight-line reference implementations used as test oracles.

Everything here operates on a plain ``{user: {item: value}}`` dict and
shares no code with the package, so agreement between the two is a real
check rather than a tautology.
"""

import math


def user_mean(data, user):
    row = data[user]
    return sum(row.values()) / len(row)


def corated(data, a, b):
    return sorted(set(data[a]) & set(data[b]))


def pcc(data, a, b):
    common = corated(data, a, b)
    if len(common) < 2:
        return 0.0
    mean_a = user_mean(data, a)
    mean_b = user_mean(data, b)
    num = sum((data[a][i] - mean_a) * (data[b][i] - mean_b) for i in common)
    den_a = math.sqrt(sum((data[a][i] - mean_a) ** 2 for i in common))
    den_b = math.sqrt(sum((data[b][i] - mean_b) ** 2 for i in common))
    if den_a == 0.0 or den_b == 0.0:
        return 0.0
    return num / (den_a * den_b)


def wpcc(data, a, b, threshold):
    n = len(corated(data, a, b))
    s = pcc(data, a, b)
    if n < threshold:
        return (n / threshold) * s
    return s


def spcc(data, a, b):
    n = len(corated(data, a, b))
    return (1.0 / (1.0 + math.exp(-n / 2.0))) * pcc(data, a, b)


def jaccard(data, a, b):
    union = set(data[a]) | set(data[b])
    if not union:
        return 0.0
    return len(set(data[a]) & set(data[b])) / len(union)


def multilevel(data, a, b, t1, t2, t3, t4, x1, x2, x3, x4, y):
    n = len(corated(data, a, b))
    s = pcc(data, a, b)
    if n >= t1 and s >= y:
        return s + x1
    if t2 <= n < t1 and s >= y:
        return s + x2
    if t3 <= n < t2 and s >= y:
        return s + x3
    if t4 <= n < t3 and s >= y:
        return s + x4
    return 0.0


def hybrid(data, a, b, t1, t2, t3, t4, x1, x2, x3, x4, y):
    n = len(corated(data, a, b))
    s = pcc(data, a, b)
    if n >= t4 and s >= y:
        return multilevel(data, a, b, t1, t2, t3, t4, x1, x2, x3, x4, y)
    return s


def all_measures(data, a, b, wpcc_threshold, ml):
    """Every measure's oracle value for one pair, keyed by kind."""
    cfg = dict(
        t1=ml.t1, t2=ml.t2, t3=ml.t3, t4=ml.t4,
        x1=ml.x1, x2=ml.x2, x3=ml.x3, x4=ml.x4, y=ml.y,
    )
    return {
        "pcc": pcc(data, a, b),
        "wpcc": wpcc(data, a, b, wpcc_threshold),
        "spcc": spcc(data, a, b),
        "jaccard": jaccard(data, a, b),
        "multilevel": multilevel(data, a, b, **cfg),
        "hybrid": hybrid(data, a, b, **cfg),
    }
