"""Edge cache redundancy planner: cost model, optimizers and Monte-Carlo validation"""

__version__ = "1.0.0"
