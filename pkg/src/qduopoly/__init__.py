"""Classical and quantum Cournot/Bertrand duopolies with grid equilibrium oracles."""

from .market import BertrandParams, MarketParams
from .solver import EpsNashReport, EquilibriumResult, GridSpec, PayoffPair

__all__ = ["BertrandParams", "EpsNashReport", "EquilibriumResult", "GridSpec",
           "MarketParams", "PayoffPair"]
