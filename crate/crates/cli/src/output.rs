use std::fs::OpenOptions;
use std::io;
use std::path::Path;

use serde::Serialize;
use serde_json::ser::Formatter;
use serde_json::Serializer;

/// Compact JSON with every float written as `d.dddddddddddddddde±x`,
/// i.e. 17 significant digits, which round-trips any `f64`.
struct RoundTripFormatter;

impl Formatter for RoundTripFormatter {
    fn write_f64<W: ?Sized + io::Write>(&mut self, writer: &mut W, value: f64) -> io::Result<()> {
        write!(writer, "{value:.16e}")
    }

    fn write_f32<W: ?Sized + io::Write>(&mut self, writer: &mut W, value: f32) -> io::Result<()> {
        write!(writer, "{value:.8e}")
    }
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut buf = Vec::new();
    let mut ser = Serializer::with_formatter(&mut buf, RoundTripFormatter);
    value.serialize(&mut ser).expect("serializing to memory cannot fail");
    String::from_utf8(buf).expect("serde_json writes UTF-8")
}

pub const CSV_HEADER: [&str; 9] = ["command", "inputs", "vw", "vx", "vy", "vz", "abs_err", "rel_err", "ms"];

/// One CSV row; absent numbers are left empty.
pub struct CsvRow {
    pub command: String,
    pub inputs: String,
    pub value: [Option<f64>; 4],
    pub abs_err: Option<f64>,
    pub rel_err: Option<f64>,
    pub ms: f64,
}

fn cell(x: Option<f64>) -> String {
    x.map(|v| format!("{v:.16e}")).unwrap_or_default()
}

/// Appends rows, writing the header first when the file is new or empty.
pub fn append_csv(path: &Path, rows: &[CsvRow]) -> io::Result<()> {
    let file = OpenOptions::new().create(true).append(true).open(path)?;
    let fresh = file.metadata()?.len() == 0;
    let mut w = csv::Writer::from_writer(file);
    if fresh {
        w.write_record(CSV_HEADER)?;
    }
    for r in rows {
        let mut rec = vec![r.command.clone(), r.inputs.clone()];
        rec.extend(r.value.iter().map(|&v| cell(v)));
        rec.push(cell(r.abs_err));
        rec.push(cell(r.rel_err));
        rec.push(format!("{:.3}", r.ms));
        w.write_record(&rec)?;
    }
    w.flush()
}
