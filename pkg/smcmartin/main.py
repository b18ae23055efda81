# smcmartin/main.py
import logging
import sys
from typing import Optional, Sequence

from smcmartin.routers.base import CliApp
from smcmartin.settings import get_settings


def build_app() -> CliApp:
    app = CliApp(
        prog="smcmartin",
        description="Substitution Markov chains: exact transition laws, Green's functions, "
                    "Martin kernels and the eg3 boundary",
    )

    # Mount the chain router (classify, simulate, prob, nstep, export-preset)
    from smcmartin.routers.chain.router import router as chain_router
    app.include_router(chain_router)

    from smcmartin.routers.martin.router import router as martin_router
    app.include_router(martin_router)

    from smcmartin.routers.spectral.router import router as spectral_router
    app.include_router(spectral_router)

    from smcmartin.routers.harmonic.router import router as harmonic_router
    app.include_router(harmonic_router)

    # Closed-form boundary tools live under their own group: `smcmartin eg3 rho ...`
    from smcmartin.routers.eg3.router import router as eg3_router
    app.include_router(eg3_router, prefix="eg3")
    return app


def main(argv: Optional[Sequence[str]] = None) -> int:
    settings = get_settings()
    logging.basicConfig(
        level=settings.log_level,
        stream=sys.stderr,
        format="%(levelname)s %(name)s: %(message)s",
    )
    return build_app().run(argv)


if __name__ == "__main__":
    sys.exit(main())
