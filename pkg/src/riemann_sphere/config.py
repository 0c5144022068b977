from dataclasses import dataclass, replace


@dataclass(frozen=True)
class Tolerances:
    """Numerical thresholds shared across modules.

    ``rank`` is relative to ``max(1, ||a||)``; ``domain`` is an absolute slack on
    spectra fed to functions with restricted domains; ``member`` governs the
    Hermitian / idempotent / isometry membership checks.
    """

    rank: float = 1e-8
    domain: float = 1e-10
    member: float = 1e-8
    projection: float = 1e-6
    tan_pole: float = 1e-6
    series_cutoff: float = 1e-4
    chart: float = 1e-6

    def scaled(self, factor: float) -> "Tolerances":
        return replace(
            self,
            rank=self.rank * factor,
            member=self.member * factor,
            projection=self.projection * factor,
            chart=self.chart * factor,
        )


DEFAULTS = Tolerances()
