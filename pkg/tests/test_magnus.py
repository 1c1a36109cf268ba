from verba.nilpotent.magnus import TruncatedSeries, magnus_evaluate
from verba.words import Word, commutator, invert, parse_word


def test_generator_and_inverse():
    a = magnus_evaluate(parse_word("x"), 4, 2)
    assert dict(a.coefficients) == {(): 1, (0,): 1}
    ainv = magnus_evaluate(parse_word("x^-1"), 4, 2)
    assert dict(ainv.coefficients) == {(): 1, (0,): -1, (0, 0): 1, (0, 0, 0): -1}
    assert a * ainv == TruncatedSeries.one(2, 4)


def test_commutator_series():
    s = magnus_evaluate(parse_word("[x,y]"), 4, 2)
    assert s.coefficient((0, 1)) == 1 and s.coefficient((1, 0)) == -1
    assert s.coefficient((0,)) == 0 and s.coefficient((1,)) == 0
    assert s.coefficient((0, 0, 1)) == -1 and s.coefficient((1, 1, 0)) == 1


def test_class_two_identities():
    # commutators of weight three vanish at degree bound 3
    a, b, c = (Word.var(i, 3) for i in range(3))
    w = commutator(commutator(a, b), c)
    assert magnus_evaluate(w, 3, 3) == TruncatedSeries.one(3, 3)
    assert magnus_evaluate(w, 4, 3) != TruncatedSeries.one(3, 4)


def test_word_times_inverse_is_one():
    w = parse_word("x y^2 [x,y]^-1 x^3")
    assert magnus_evaluate(w * invert(w), 4, 2) == TruncatedSeries.one(2, 4)
