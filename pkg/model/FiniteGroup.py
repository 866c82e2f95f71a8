from typing import Tuple
from typing import Sequence
from dataclasses import field
from dataclasses import dataclass

from utils.errors import GroupAxiomError


@dataclass(frozen=True)
class FiniteGroup:
    """
    A finite group given extensionally by its Cayley table.

    The table is validated exhaustively on construction: closure, a two-sided identity,
    two-sided inverses and associativity of every triple.

    Attributes:
        name (str): Display name, e.g. "S3".
        elements (tuple[str, ...]): Element labels; their order fixes the χ basis order of ℓ²_G(A).
        table (tuple[tuple[int, ...], ...]): table[i][j] is the index of elements[i]·elements[j].
        identity (int): Index of the identity element (derived).
        inverses (tuple[int, ...]): inverses[i] is the index of elements[i]^-1 (derived).
    """

    name: str
    elements: Tuple[str, ...]
    table: Tuple[Tuple[int, ...], ...]
    identity: int = field(init=False)
    inverses: Tuple[int, ...] = field(init=False)

    def __post_init__(self) -> None:
        elements = tuple(str(element) for element in self.elements)
        table = tuple(tuple(int(entry) for entry in row) for row in self.table)
        order = len(elements)

        if not order:
            raise GroupAxiomError("a group needs at least one element")

        if len(set(elements)) != order:
            raise GroupAxiomError(f"element labels must be unique, got {list(elements)}")

        if len(table) != order or any(len(row) != order for row in table):
            raise GroupAxiomError(f"the table must be {order}x{order}")

        for i, row in enumerate(table):
            for j, entry in enumerate(row):
                if not 0 <= entry < order:
                    raise GroupAxiomError(f"table entry ({elements[i]}, {elements[j]}) = {entry} is not an element")

        object.__setattr__(self, "elements", elements)
        object.__setattr__(self, "table", table)
        object.__setattr__(self, "identity", self._findIdentity())
        object.__setattr__(self, "inverses", self._findInverses())

        self._assertAssociative()

    @classmethod
    def fromLabels(cls, name: str, elements: Sequence[str], labelTable: Sequence[Sequence[str]]) -> "FiniteGroup":
        """Builds a group from a table whose entries are element labels."""

        index = {str(label): position for position, label in enumerate(elements)}

        try:
            table = tuple(tuple(index[str(label)] for label in row) for row in labelTable)
        except KeyError as error:
            raise GroupAxiomError(f"table entry {error.args[0]!r} is not an element")

        return cls(name, tuple(elements), table)

    def _findIdentity(self) -> int:
        everything = tuple(range(len(self.elements)))

        for candidate in everything:
            row = self.table[candidate]
            column = tuple(self.table[g][candidate] for g in everything)
            if row == everything and column == everything:
                return candidate

        raise GroupAxiomError("the table has no two-sided identity")

    def _findInverses(self) -> Tuple[int, ...]:
        inverses = []
        for g in range(len(self.elements)):
            matches = [h for h in range(len(self.elements)) if self.table[g][h] == self.identity]

            if len(matches) != 1 or self.table[matches[0]][g] != self.identity:
                raise GroupAxiomError(f"element {self.elements[g]} has no two-sided inverse")

            inverses.append(matches[0])

        return tuple(inverses)

    def _assertAssociative(self) -> None:
        order = len(self.elements)
        for f in range(order):
            for g in range(order):
                fg = self.table[f][g]
                for h in range(order):
                    if self.table[fg][h] != self.table[f][self.table[g][h]]:
                        triple = (self.elements[f], self.elements[g], self.elements[h])
                        raise GroupAxiomError(f"(ab)c != a(bc) for (a, b, c) = {triple}")

    @property
    def order(self) -> int:
        return len(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def index(self, label: str) -> int:
        try:
            return self.elements.index(str(label))
        except ValueError:
            raise GroupAxiomError(f"{label!r} is not an element of {self.name}")

    def multiply(self, left: int, right: int) -> int:
        return self.table[left][right]

    def inverse(self, element: int) -> int:
        return self.inverses[element]
