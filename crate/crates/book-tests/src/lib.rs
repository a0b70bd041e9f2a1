//! Compiles the Rust listings in `book/src` as doctests.

macro_rules! chapter {
    ($name:ident, $file:literal) => {
        #[doc = include_str!(concat!("../../../book/src/", $file))]
        pub mod $name {}
    };
}

chapter!(introduction, "introduction.md");
chapter!(encoding, "encoding.md");
chapter!(index, "index.md");
chapter!(engines, "engines.md");
chapter!(scoring, "scoring.md");
chapter!(unequal_lengths, "unequal-lengths.md");
chapter!(sequence_io, "sequence-io.md");
chapter!(reference_data, "reference-data.md");
chapter!(cli, "cli.md");
