//! Result-file formats.
