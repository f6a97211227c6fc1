import enum


class Order(enum.Enum):
    """Outcome of comparing two elements of a partially ordered value set."""
    LE = "LE"
    GE = "GE"
    EQ = "EQ"
    INCOMPARABLE = "Incomparable"

    def flip(self) -> "Order":
        return {Order.LE: Order.GE, Order.GE: Order.LE}.get(self, self)

    @property
    def below(self) -> bool:
        """True when the left operand is <= the right one."""
        return self in (Order.LE, Order.EQ)


def compare_vectors(xs, ys) -> Order:
    """Pointwise comparison of two equal-length sequences."""
    le = all(a <= b for a, b in zip(xs, ys))
    ge = all(a >= b for a, b in zip(xs, ys))
    if le and ge:
        return Order.EQ
    if le:
        return Order.LE
    if ge:
        return Order.GE
    return Order.INCOMPARABLE
