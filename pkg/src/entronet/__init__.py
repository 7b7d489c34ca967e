"""entronet: exact diagrammatic calculus for entropy and cocycle-twisted networks."""

__version__ = "0.1.0"
