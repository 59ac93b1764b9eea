use std::fs;
use std::io;
use std::path::PathBuf;

use clap::ValueEnum;
use formal_cf::cfcore::{format_list, Word};
use serde_json::json;

/// How a word is printed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    /// `[a_0, a_1, ...]`, head first when present.
    Text,
    /// `{"p": .., "head": .., "letters": [..]}`.
    Json,
    /// Degrees of the letters as `[d1, d2, ...]`.
    Degrees,
    /// Leading coefficients of the letters as `[c1, c2, ...]`.
    Leading,
    /// The letters without the head.
    Letters,
    /// One row per letter: `n,degree,leading,letter`.
    Csv,
}

pub fn render_word(w: &Word, format: Format) -> String {
    match format {
        Format::Text => w.to_string(),
        Format::Json => {
            let j = w.to_json();
            let mut v = json!({ "p": w.field().modulus(), "letters": j.letters });
            if let Some(h) = j.head {
                v["head"] = json!(h);
            }
            v.to_string()
        }
        Format::Degrees => format_list(&w.degrees()),
        Format::Leading => format_list(&w.leading_coefficients()),
        Format::Letters => format_list(w.letters()),
        Format::Csv => {
            let mut out = String::from("n,degree,leading,letter");
            for (i, a) in w.letters().iter().enumerate() {
                let lead = a.leading().map_or(0, |c| c.value());
                out.push_str(&format!("\n{},{},{lead},{a}", i + 1, a.degree().unwrap_or(0)));
            }
            out
        }
    }
}

/// Destination of a command's main output, plus its notes for stderr.
pub struct Sink {
    path: Option<PathBuf>,
    buf: String,
    notes: String,
}

impl Sink {
    pub fn new(path: Option<PathBuf>) -> Self {
        Sink {
            path,
            buf: String::new(),
            notes: String::new(),
        }
    }

    pub fn line(&mut self, s: impl AsRef<str>) {
        self.buf.push_str(s.as_ref());
        self.buf.push('\n');
    }

    pub fn note(&mut self, s: impl AsRef<str>) {
        self.notes.push_str(s.as_ref());
        self.notes.push('\n');
    }

    /// Writes the output file if one was given and returns what remains for
    /// stdout and stderr.
    pub fn finish(self) -> io::Result<(String, String)> {
        match self.path {
            Some(p) => {
                fs::write(p, self.buf)?;
                Ok((String::new(), self.notes))
            }
            None => Ok((self.buf, self.notes)),
        }
    }
}
