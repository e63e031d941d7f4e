//! Dataset CSV schema: one motion segment per row.
//!
//! Units are meters, radians, newtons, and newton-meters. The `label`
//! column is `1` (slipped), `0` (stuck), or empty, in which case the label
//! is derived from the poses on demand.

use std::io::{Read, Write};
use std::path::Path as FsPath;

use crate::geom::{Pose2, Wrench2};
use crate::numfmt::dec17;

use super::{IdentifyError, SegmentRecord};

pub const DATASET_HEADER: &str = "qe0_x,qe0_y,qe0_th,qeT_x,qeT_y,qeT_th,\
qo0_x,qo0_y,qo0_th,qoT_x,qoT_y,qoT_th,Ne,fx,fy,tau,label";

const COLUMNS: [&str; 17] = [
    "qe0_x", "qe0_y", "qe0_th", "qeT_x", "qeT_y", "qeT_th", "qo0_x", "qo0_y", "qo0_th", "qoT_x",
    "qoT_y", "qoT_th", "Ne", "fx", "fy", "tau", "label",
];

/// Reads a segment dataset, enforcing the exact header and per-field types.
/// Errors carry the 1-based data row and the column name.
pub fn read_records_csv<R: Read>(reader: R) -> Result<Vec<SegmentRecord>, IdentifyError> {
    let mut csv_reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .trim(csv::Trim::All)
        .from_reader(reader);

    let headers = csv_reader
        .headers()
        .map_err(|e| IdentifyError::Io(e.to_string()))?
        .clone();
    let got: Vec<&str> = headers.iter().collect();
    if got != COLUMNS {
        return Err(IdentifyError::Header {
            expected: DATASET_HEADER.to_string(),
            got: got.join(","),
        });
    }

    let mut records = Vec::new();
    for (idx, row) in csv_reader.records().enumerate() {
        let row_number = idx + 1;
        let row = row.map_err(|e| IdentifyError::Csv {
            row: row_number,
            column: String::new(),
            message: e.to_string(),
        })?;
        if row.len() != COLUMNS.len() {
            return Err(IdentifyError::Csv {
                row: row_number,
                column: String::new(),
                message: format!("expected {} fields, got {}", COLUMNS.len(), row.len()),
            });
        }
        let field = |i: usize| -> Result<f64, IdentifyError> {
            row[i].parse::<f64>().map_err(|e| IdentifyError::Csv {
                row: row_number,
                column: COLUMNS[i].to_string(),
                message: e.to_string(),
            })
        };
        let label = match &row[16] {
            "" => None,
            "0" => Some(false),
            "1" => Some(true),
            other => {
                return Err(IdentifyError::Csv {
                    row: row_number,
                    column: "label".to_string(),
                    message: format!("expected 0, 1, or empty, got `{other}`"),
                })
            }
        };
        let record = SegmentRecord {
            q_e0: Pose2::new(field(0)?, field(1)?, field(2)?),
            q_e_t: Pose2::new(field(3)?, field(4)?, field(5)?),
            q_o0: Pose2::new(field(6)?, field(7)?, field(8)?),
            q_o_t: Pose2::new(field(9)?, field(10)?, field(11)?),
            n_e: field(12)?,
            wrench: Wrench2::new(field(13)?, field(14)?, field(15)?),
            label,
        };
        record.validate().map_err(|e| IdentifyError::Csv {
            row: row_number,
            column: String::new(),
            message: e.to_string(),
        })?;
        records.push(record);
    }
    Ok(records)
}

/// Convenience wrapper over [`read_records_csv`] for a file path.
pub fn read_records_csv_path(path: &FsPath) -> Result<Vec<SegmentRecord>, IdentifyError> {
    let file = std::fs::File::open(path).map_err(|e| IdentifyError::Io(e.to_string()))?;
    read_records_csv(std::io::BufReader::new(file))
}

/// Writes records in the dataset schema with round-trip-exact floats.
pub fn write_records_csv<W: Write>(
    records: &[SegmentRecord],
    mut writer: W,
) -> Result<(), IdentifyError> {
    let io_err = |e: std::io::Error| IdentifyError::Io(e.to_string());
    writeln!(writer, "{DATASET_HEADER}").map_err(io_err)?;
    for r in records {
        let label = match r.label {
            None => String::new(),
            Some(false) => "0".to_string(),
            Some(true) => "1".to_string(),
        };
        let fields = [
            r.q_e0.x, r.q_e0.y, r.q_e0.theta, r.q_e_t.x, r.q_e_t.y, r.q_e_t.theta, r.q_o0.x,
            r.q_o0.y, r.q_o0.theta, r.q_o_t.x, r.q_o_t.y, r.q_o_t.theta, r.n_e, r.wrench.fx,
            r.wrench.fy, r.wrench.tau,
        ];
        let mut line = fields.map(dec17).join(",");
        line.push(',');
        line.push_str(&label);
        writeln!(writer, "{line}").map_err(io_err)?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::identify::synth_dataset;
    use crate::mechanics::FrictionParams;

    #[test]
    fn round_trips_synthetic_records_exactly() {
        let p = FrictionParams::new(0.5, 0.25, 0.015, 0.04, 0.6, 0.05, 9.81).unwrap();
        let records = synth_dataset(&p, 40, &[3.0, 7.0], 0.05, 4);
        let mut buf = Vec::new();
        write_records_csv(&records, &mut buf).unwrap();
        let back = read_records_csv(buf.as_slice()).unwrap();
        assert_eq!(records, back);
    }

    #[test]
    fn header_typo_is_rejected() {
        let bad = DATASET_HEADER.replace("tau", "torque") + "\n";
        match read_records_csv(bad.as_bytes()) {
            Err(IdentifyError::Header { .. }) => {}
            other => panic!("expected header error, got {other:?}"),
        }
    }

    #[test]
    fn bad_field_names_row_and_column() {
        let mut text = String::from(DATASET_HEADER);
        text.push('\n');
        text.push_str("0,0,0,0,0,0,0,0,0,0,0,0,3.0,0.1,oops,0.001,1\n");
        match read_records_csv(text.as_bytes()) {
            Err(IdentifyError::Csv { row, column, .. }) => {
                assert_eq!(row, 1);
                assert_eq!(column, "fy");
            }
            other => panic!("expected csv error, got {other:?}"),
        }
    }

    #[test]
    fn empty_label_resolves_from_poses() {
        let mut text = String::from(DATASET_HEADER);
        text.push('\n');
        // Object lags the end-effector rotation by 0.2 rad: slipped.
        text.push_str("0,0,0,0.01,0,0.3,0,0,0,0.01,0,0.1,3.0,0.1,0.0,0.001,\n");
        let records = read_records_csv(text.as_bytes()).unwrap();
        assert_eq!(records.len(), 1);
        assert_eq!(records[0].label, None);
        assert!(records[0].resolved_label());
    }

    #[test]
    fn non_positive_normal_force_is_rejected() {
        let mut text = String::from(DATASET_HEADER);
        text.push('\n');
        text.push_str("0,0,0,0,0,0,0,0,0,0,0,0,0.0,0.1,0.0,0.001,0\n");
        assert!(matches!(
            read_records_csv(text.as_bytes()),
            Err(IdentifyError::Csv { row: 1, .. })
        ));
    }
}
