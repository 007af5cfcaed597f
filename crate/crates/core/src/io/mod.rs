//! File formats: binary/ASCII PGM images and deterministic CSV reports.

pub mod csv;
pub mod pgm;

pub use self::csv::{fmt_float, write_csv_report, Cell, CsvTable};
pub use pgm::{decode_pgm, encode_pgm, encode_pgm_ascii, load_pgm, save_pgm, PgmBits};
