from hypothesis import strategies as st


def words(rank=2, min_size=0, max_size=12):
    """Reduced words over the rank-`rank` alphabet."""
    from freeprim.words import reduce

    return st.lists(st.integers(0, 2 * rank - 1), min_size=min_size, max_size=max_size).map(reduce)


def raw_letters(rank=2, max_size=16):
    return st.lists(st.integers(0, 2 * rank - 1), max_size=max_size)
