//! Plain-text and CSV rendering.

use circres::report::Quantity;

/// Exact values as `p/q`, floats in shortest round-trip form.
pub fn text_value(q: &Quantity) -> String {
    match q {
        Quantity::Float(v) => format!("{v}"),
        other => other.to_string(),
    }
}

/// CSV with the given header, LF line endings.
pub fn csv_table<I>(header: &[&str], rows: I) -> String
where
    I: IntoIterator<Item = Vec<String>>,
{
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new());
    w.write_record(header).expect("writing to memory");
    for row in rows {
        w.write_record(&row).expect("writing to memory");
    }
    let bytes = w.into_inner().expect("flushing to memory");
    String::from_utf8(bytes).expect("csv fields are UTF-8")
}
