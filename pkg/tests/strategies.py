from hypothesis import strategies as st

from verba.words import Word


def words(max_arity: int = 3, max_len: int = 10):
    letter = st.tuples(st.integers(0, max_arity - 1), st.sampled_from([1, -1]))
    return st.lists(letter, max_size=max_len).map(lambda ls: Word(tuple(ls), max_arity))
