//! Succinct building blocks: rank/select bitvectors, Elias-Fano arrays and
//! indexable dictionaries.

mod bitvec;
mod dictionary;
mod elias_fano;

pub use bitvec::{BitBuf, BitVector};
pub use dictionary::IndexableSet;
pub use elias_fano::EliasFanoArray;

