use std::io::{self, Write};

/// Writes the `#schema:` comment followed by the column header row.
pub(crate) fn write_header<W: Write>(w: &mut W, columns: &[&str]) -> io::Result<()> {
    let joined = columns.join(",");
    writeln!(w, "#schema: {joined}")?;
    writeln!(w, "{joined}")
}
