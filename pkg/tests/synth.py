"""Deterministic synthetic rating data for the tests.

``random_matrix`` makes small unstructured matrices for oracle and
property sweeps.  ``latent_matrix`` draws ratings from a user/item
latent-factor model with per-user bias, heterogeneous profile sizes, and
observation noise, so neighborhood quality actually matters; it stands in
for real rating datasets when those are not on disk.
"""

import math
import random

from levelcf import RatingScale, RatingsMatrix


def random_matrix(rng, max_users=20, max_items=30, scale=None, integer=True):
    """A random sparse matrix plus the plain-dict snapshot oracles consume."""
    if scale is None:
        scale = RatingScale(1, 5, relevance_threshold=4)
    n_users = rng.randint(4, max_users)
    n_items = rng.randint(5, max_items)
    density = rng.uniform(0.15, 0.7)
    matrix = RatingsMatrix(scale)
    data = {}
    for user in range(1, n_users + 1):
        row = {}
        for item in range(1, n_items + 1):
            if rng.random() < density:
                if integer:
                    row[item] = float(rng.randint(int(scale.min), int(scale.max)))
                else:
                    row[item] = rng.uniform(scale.min, scale.max)
        if not row:  # every stored user needs >= 1 rating
            row[rng.randint(1, n_items)] = float(rng.randint(int(scale.min), int(scale.max)))
        for item, value in row.items():
            matrix.insert(user, item, value)
        data[user] = row
    return matrix, data


def latent_triples(
    n_users,
    n_items,
    n_ratings,
    scale,
    seed,
    *,
    n_factors=4,
    factor_weight=1.0,
    bias_sd=0.5,
    noise_sd=1.0,
    profile_spread=0.9,
    popularity_skew=0.8,
    integer=True,
):
    """Rating triples from a noisy latent-factor model.

    Users get profile sizes from a log-normal spread and items get a
    power-law popularity, so co-rated counts vary widely across pairs.
    Rating levels are an affine map of the latent score onto the scale,
    clipped, and optionally rounded to integers.
    """
    rng = random.Random(seed)
    users = list(range(1, n_users + 1))
    items = list(range(1, n_items + 1))
    user_vecs = {u: [rng.gauss(0, 1) for _ in range(n_factors)] for u in users}
    item_vecs = {i: [rng.gauss(0, 1) for _ in range(n_factors)] for i in items}
    user_bias = {u: rng.gauss(0, bias_sd) for u in users}
    item_bias = {i: rng.gauss(0, bias_sd) for i in items}

    profile_weight = [math.exp(rng.gauss(0, profile_spread)) for _ in users]
    total_weight = sum(profile_weight)
    item_weights = [1.0 / (rank + 1) ** popularity_skew for rank in range(n_items)]

    center = scale.min + 0.6 * (scale.max - scale.min)
    unit = (scale.max - scale.min) / 4.0
    root = math.sqrt(n_factors)

    triples = []
    seen = set()
    for idx, user in enumerate(users):
        share = max(2, round(n_ratings * profile_weight[idx] / total_weight))
        share = min(share, n_items)
        chosen = set()
        while len(chosen) < share:
            chosen.update(rng.choices(items, weights=item_weights, k=share - len(chosen)))
        for item in sorted(chosen):
            if (user, item) in seen:
                continue
            seen.add((user, item))
            dot = sum(a * b for a, b in zip(user_vecs[user], item_vecs[item])) / root
            raw = (
                center
                + unit * (user_bias[user] + item_bias[item] + factor_weight * dot)
                + unit * rng.gauss(0, noise_sd)
            )
            value = min(scale.max, max(scale.min, raw))
            if integer:
                value = float(round(value))
            triples.append((user, item, value))
            if len(triples) >= n_ratings:
                return triples
    return triples


def latent_matrix(n_users, n_items, n_ratings, scale, seed, **kwargs):
    triples = latent_triples(n_users, n_items, n_ratings, scale, seed, **kwargs)
    return RatingsMatrix.from_triples(triples, scale)
