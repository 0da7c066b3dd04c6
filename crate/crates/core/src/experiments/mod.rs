//! Experiment protocols.
