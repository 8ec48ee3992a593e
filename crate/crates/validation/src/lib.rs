//! Holds only the `acceptance` test target.
