"""Plain backtracking over an ordered list of variables.

Every enumerator in the package reduces to the same pattern: variables are
assigned in a fixed order, each variable draws its candidates from a function
of the earlier values, and each constraint is evaluated as soon as the last
variable it mentions has been set.  Solutions therefore come out in
lexicographic order of the candidate lists, which is what makes all
enumeration results deterministic.
"""


class Problem:
    """A finite constraint problem with ordered variables."""

    def __init__(self):
        self.names = []
        self._domains = []
        self._checks = []
        self._index = {}

    def add(self, name, domain):
        """Add a variable; ``domain(vals)`` returns its candidates."""
        if name in self._index:
            raise ValueError(f"duplicate variable {name!r}")
        self._index[name] = len(self.names)
        self.names.append(name)
        self._domains.append(domain)
        self._checks.append([])
        return self._index[name]

    def position(self, name):
        return self._index[name]

    def __contains__(self, name):
        return name in self._index

    def require(self, positions, predicate):
        """Attach ``predicate(vals)`` to the latest of ``positions``.

        A constraint that mentions no variable at all is evaluated once at
        the very start.
        """
        positions = [p for p in positions if p is not None]
        at = max(positions) if positions else -1
        if at < 0:
            self._checks.append(("pre", predicate))
        else:
            self._checks[at].append(predicate)

    def solutions(self):
        n = len(self.names)
        for extra in self._checks[n:]:
            if not extra[1]([]):
                return
        vals = [None] * n
        domains, checks = self._domains, self._checks

        # explicit stack of candidate iterators keeps deep problems off the
        # interpreter recursion limit
        if n == 0:
            yield ()
            return
        stack = [iter(domains[0](vals))]
        while stack:
            i = len(stack) - 1
            for v in stack[-1]:
                vals[i] = v
                if all(c(vals) for c in checks[i]):
                    break
            else:
                vals[i] = None
                stack.pop()
                continue
            if i + 1 == n:
                yield tuple(vals)
            else:
                stack.append(iter(domains[i + 1](vals)))


def first(iterable, default=None):
    for x in iterable:
        return x
    return default
