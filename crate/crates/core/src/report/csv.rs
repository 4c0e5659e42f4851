use std::io::{Read, Write};
use std::path::Path;

use crate::error::{Error, Result};
use crate::simulation::SummaryRow;

pub const SUMMARY_HEADER: &str = "experiment,classifier,p,n,mean_err,std_err,trials";

/// Writes summary rows with fixed 6-decimal error columns.
pub fn write_summary_csv<W: Write>(rows: &[SummaryRow], out: &mut W) -> std::io::Result<()> {
    let mut s = String::with_capacity(64 * (rows.len() + 1));
    s.push_str(SUMMARY_HEADER);
    s.push('\n');
    for r in rows {
        s.push_str(&format!(
            "{},{},{},{},{:.6},{:.6},{}\n",
            r.experiment, r.classifier, r.p, r.n, r.mean_err, r.std_err, r.trials
        ));
    }
    out.write_all(s.as_bytes())
}

pub fn emit_csv(rows: &[SummaryRow], path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    let mut buf = Vec::new();
    write_summary_csv(rows, &mut buf).map_err(|e| Error::io(path, e))?;
    std::fs::write(path, buf).map_err(|e| Error::io(path, e))
}

pub fn read_summary_csv<R: Read>(input: R) -> Result<Vec<SummaryRow>> {
    let mut rdr = ::csv::ReaderBuilder::new().has_headers(true).from_reader(input);
    let header = rdr
        .headers()
        .map_err(|e| Error::Parse { row: 1, message: e.to_string() })?
        .iter()
        .collect::<Vec<_>>()
        .join(",");
    if header != SUMMARY_HEADER {
        return Err(Error::Parse {
            row: 1,
            message: format!("expected header {SUMMARY_HEADER}"),
        });
    }
    let mut rows = Vec::new();
    for (i, rec) in rdr.records().enumerate() {
        let row = i + 2;
        let rec = rec.map_err(|e| Error::Parse { row, message: e.to_string() })?;
        let field = |k: usize| rec.get(k).unwrap_or("");
        let bad = |what: &str| Error::Parse {
            row,
            message: format!("invalid {what}"),
        };
        let trials: usize = field(6).parse().map_err(|_| bad("trials"))?;
        rows.push(SummaryRow {
            experiment: field(0).parse().map_err(|_| bad("experiment"))?,
            classifier: field(1).to_string(),
            p: field(2).parse().map_err(|_| bad("p"))?,
            n: field(3).parse().map_err(|_| bad("n"))?,
            mean_err: field(4).parse().map_err(|_| bad("mean_err"))?,
            std_err: field(5).parse().map_err(|_| bad("std_err"))?,
            trials,
            std_undefined: trials < 2,
        });
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simulation::ExperimentId;

    fn row() -> SummaryRow {
        SummaryRow {
            experiment: ExperimentId::Exp1,
            classifier: "LDA".into(),
            p: 4,
            n: 200,
            mean_err: 0.1587,
            std_err: 0.009,
            trials: 200,
            std_undefined: false,
        }
    }

    #[test]
    fn exact_line() {
        let mut buf = Vec::new();
        write_summary_csv(&[row()], &mut buf).unwrap();
        assert_eq!(
            String::from_utf8(buf).unwrap(),
            "experiment,classifier,p,n,mean_err,std_err,trials\nEXP1,LDA,4,200,0.158700,0.009000,200\n"
        );
    }

    #[test]
    fn empty_is_header_only() {
        let mut buf = Vec::new();
        write_summary_csv(&[], &mut buf).unwrap();
        assert_eq!(buf, format!("{SUMMARY_HEADER}\n").into_bytes());
    }

    #[test]
    fn parse_back_to_printed_precision() {
        let mut r = row();
        r.mean_err = 0.123456789;
        let mut buf = Vec::new();
        write_summary_csv(&[r.clone(), row()], &mut buf).unwrap();
        let back = read_summary_csv(buf.as_slice()).unwrap();
        assert_eq!(back.len(), 2);
        assert!((back[0].mean_err - r.mean_err).abs() <= 5e-7);
        assert_eq!(back[1], row());
    }

    #[test]
    fn bad_header_rejected() {
        assert!(read_summary_csv("a,b\n1,2\n".as_bytes()).is_err());
    }
}
