import numpy as np

from api.utils import LambdaGMCommand
from extremes.asymptotic import (
    eta13, eta_biv, eta_fit, joint_survival_biv, survival13
)


class Command(LambdaGMCommand):
    help = "Оценивает коэффициент η по хвосту гауссовской меры экспоненты."

    def add_arguments(self, parser):
        parser.add_argument("--a", type=float, required=True)
        parser.add_argument("--b", type=float)
        parser.add_argument("--umin", type=float, default=2.0)
        parser.add_argument("--umax", type=float, default=4.5)
        parser.add_argument("--points", type=int, default=8)

    def compute(self, **options):
        a, b = options["a"], options["b"]
        u_grid = np.linspace(
            options["umin"], options["umax"], options["points"]
        )
        if b is None:
            closed = eta_biv(a)
            fitted = eta_fit(lambda u: joint_survival_biv(a, u), u_grid)
        else:
            closed = eta13(a, b)
            fitted = eta_fit(lambda u: survival13(a, b, u), u_grid)
        return {"eta_closed": closed, "eta_fit": fitted, "u": u_grid.tolist()}
