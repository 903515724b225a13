"""Isomorphism classes and isomorphism witnesses."""

from dataclasses import dataclass

from ctgroups.models.coords import ACoord, DirectedEdge, Pointing
from ctgroups.models.maps import SLAut


@dataclass(frozen=True)
class IsoClass:
    phi: tuple[tuple[DirectedEdge, ACoord], ...]
    orientable: bool
    canonical: Pointing

    @property
    def key(self) -> str:
        return class_key(dict(self.phi))


def class_key(phi: dict[DirectedEdge, ACoord]) -> str:
    """Concatenated "(eps,r)" per H-edge, in H order."""
    return "".join(str(phi[e]) for e in sorted(phi))


@dataclass(frozen=True)
class IsoWitness:
    """a_i per vertex and a_ij per undirected edge (keyed by sorted label pair)."""

    vertex: dict[str, ACoord]
    edge: dict[tuple[str, str], ACoord]


@dataclass(frozen=True)
class MatrixIsoWitness:
    """Semilinear automorphisms per vertex group (SL2) and per edge group (SL3)."""

    vertex: dict[str, SLAut]
    edge: dict[tuple[str, str], SLAut]

    def project(self) -> IsoWitness:
        """Coordinates of a witness for (delta1, delta2): the matrix squares force
        delta2 + a_ij = a_i + delta1, so the projection negates."""
        return IsoWitness(
            vertex={v: -a.coord for v, a in self.vertex.items()},
            edge={k: -a.coord for k, a in self.edge.items()},
        )
