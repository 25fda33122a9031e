use std::fmt::Write as _;
use std::time::Duration;

/// Prefix marking keys whose values depend on the machine and the run.
pub const TIMING_PREFIX: &str = "time.";

/// Outcome of a cracking run.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct AttackReport {
    pub attack: String,
    /// Scheme label of the attacked records (`mixed` or `none` when not
    /// uniform).
    pub scheme: String,
    pub records: usize,
    pub candidates_tried: u64,
    /// Exact number of password-hash (or chain step) evaluations.
    pub hash_ops: u64,
    /// `(username, plaintext)` in dump order, each re-verified.
    pub cracked: Vec<(String, Vec<u8>)>,
    pub false_alarms: u64,
    /// Stored blocks per memory-hard evaluation, for MFcrypt records.
    pub peak_memory_blocks: u64,
    /// True when a time budget cut the run short.
    pub truncated: bool,
    pub wall_time: Duration,
    pub hash_rate: f64,
}

impl AttackReport {
    pub fn cracked_count(&self) -> usize {
        self.cracked.len()
    }

    pub fn cracked_fraction(&self) -> f64 {
        if self.records == 0 {
            0.0
        } else {
            self.cracked.len() as f64 / self.records as f64
        }
    }

    /// Cracked accounts per second of wall time.
    pub fn crack_rate(&self) -> f64 {
        let secs = self.wall_time.as_secs_f64();
        if secs > 0.0 {
            self.cracked.len() as f64 / secs
        } else {
            f64::INFINITY
        }
    }

    pub(crate) fn finish(&mut self, wall_time: Duration) {
        self.wall_time = wall_time;
        let secs = wall_time.as_secs_f64();
        self.hash_rate = if secs > 0.0 {
            self.hash_ops as f64 / secs
        } else {
            0.0
        };
    }

    fn fields(&self) -> Vec<(String, String)> {
        vec![
            ("attack".into(), self.attack.clone()),
            ("scheme".into(), self.scheme.clone()),
            ("records".into(), self.records.to_string()),
            ("candidates_tried".into(), self.candidates_tried.to_string()),
            ("hash_ops".into(), self.hash_ops.to_string()),
            ("cracked".into(), self.cracked.len().to_string()),
            ("false_alarms".into(), self.false_alarms.to_string()),
            (
                "peak_memory_blocks".into(),
                self.peak_memory_blocks.to_string(),
            ),
            ("truncated".into(), self.truncated.to_string()),
            (
                format!("{TIMING_PREFIX}wall_seconds"),
                format!("{:.6}", self.wall_time.as_secs_f64()),
            ),
            (
                format!("{TIMING_PREFIX}hash_rate"),
                format!("{:.3}", self.hash_rate),
            ),
        ]
    }

    /// `key=value` lines, then one `cracked=<user>:<plaintext>` line per
    /// crack. Keys starting with `time.` vary between runs.
    pub fn to_key_value(&self) -> String {
        let mut out = String::new();
        for (k, v) in self.fields() {
            let _ = writeln!(out, "{k}={v}");
        }
        for (user, pw) in &self.cracked {
            let _ = writeln!(out, "crack={user}:{}", String::from_utf8_lossy(pw));
        }
        out
    }

    /// One header row and one summary row.
    pub fn to_csv(&self) -> String {
        let (keys, values): (Vec<_>, Vec<_>) = self.fields().into_iter().unzip();
        let mut table = Table::new(keys);
        table.push(values);
        table.to_csv()
    }
}

/// A small comma-separated table with a header row.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new<S: Into<String>>(header: impl IntoIterator<Item = S>) -> Self {
        Table {
            header: header.into_iter().map(Into::into).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push<S: Into<String>>(&mut self, row: impl IntoIterator<Item = S>) {
        let row: Vec<String> = row.into_iter().map(Into::into).collect();
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for row in std::iter::once(&self.header).chain(&self.rows) {
            let cells: Vec<String> = row.iter().map(|c| csv_cell(c)).collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }
}

fn csv_cell(cell: &str) -> String {
    if cell.contains([',', '"', '\n']) {
        format!("\"{}\"", cell.replace('"', "\"\""))
    } else {
        cell.to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn key_value_flags_timing() {
        let mut r = AttackReport {
            attack: "dictionary".into(),
            scheme: "sha1".into(),
            records: 2,
            hash_ops: 10,
            cracked: vec![("a".into(), b"123456".to_vec())],
            ..Default::default()
        };
        r.finish(Duration::from_millis(500));
        assert_eq!(r.hash_rate, 20.0);
        let kv = r.to_key_value();
        assert!(kv.contains("records=2\n"));
        assert!(kv.contains("crack=a:123456\n"));
        let timing: Vec<_> = kv
            .lines()
            .filter(|l| l.starts_with(TIMING_PREFIX))
            .collect();
        assert_eq!(timing.len(), 2);
    }

    #[test]
    fn csv_quoting() {
        let mut t = Table::new(["a", "b"]);
        t.push(["1", "x,y"]);
        t.push(["say \"hi\"", ""]);
        assert_eq!(t.to_csv(), "a,b\n1,\"x,y\"\n\"say \"\"hi\"\"\",\n");
    }

    #[test]
    fn csv_summary_has_header() {
        let csv = AttackReport::default().to_csv();
        let mut lines = csv.lines();
        assert!(lines.next().unwrap().starts_with("attack,scheme,records"));
        assert_eq!(lines.count(), 1);
    }
}
