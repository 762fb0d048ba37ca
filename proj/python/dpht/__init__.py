"""Differentially private hyperparameter tuning: propose-test loop with
doubling step, subsample-and-aggregate utilities, and privacy accounting."""

from dpht._core import *  # noqa: F401,F403
