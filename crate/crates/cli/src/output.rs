use std::fs::File;
use std::io::{self, BufWriter, Write};

use crate::{Failure, OutputArgs};

/// Standard output or the `--out` file.
pub fn sink(args: &OutputArgs) -> Result<Box<dyn Write>, Failure> {
    match &args.out {
        Some(path) => File::create(path)
            .map(|f| Box::new(BufWriter::new(f)) as Box<dyn Write>)
            .map_err(|e| Failure::Usage(format!("cannot write {}: {e}", path.display()))),
        None => Ok(Box::new(BufWriter::new(io::stdout().lock()))),
    }
}

pub fn write_line(out: &mut dyn Write, line: &str) -> Result<(), Failure> {
    writeln!(out, "{line}").map_err(|e| Failure::Failed(format!("write failed: {e}")))
}

pub fn finish(mut out: Box<dyn Write>) -> Result<(), Failure> {
    out.flush()
        .map_err(|e| Failure::Failed(format!("write failed: {e}")))
}
