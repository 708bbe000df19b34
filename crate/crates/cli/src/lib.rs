//! Command-line front end: the word file format, output rendering and
//! subcommand dispatch.

pub mod app;
pub mod output;
pub mod wordfile;

pub use app::{run, Outcome};
pub use wordfile::{parse_word_file, serialize_word, ParseError};
