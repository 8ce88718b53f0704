use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use serde::Serialize;

use discovery_core::{solve, Algorithm, Answer, Dist, SolveOptions};

use crate::{load_instance, Failure};

#[derive(Debug, Serialize)]
struct Row {
    file: String,
    algorithm: String,
    time_ms: f64,
    /// `ok` or the error code.
    status: String,
    answer: Option<Answer>,
    optimal_cost: Option<Dist>,
    stats: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    agree: Option<bool>,
}

fn corpus_files(dir: &Path) -> Result<Vec<PathBuf>, Failure> {
    let entries = fs::read_dir(dir).map_err(|e| Failure::Input(format!("corpus {}: {e}", dir.display())))?;
    let mut files: Vec<PathBuf> = entries
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| {
            let name = p.file_name().map(|n| n.to_string_lossy().into_owned()).unwrap_or_default();
            name.ends_with(".json") && !name.ends_with(".meta.json")
        })
        .collect();
    files.sort();
    if files.is_empty() {
        return Err(Failure::Input(format!("corpus {} holds no instance files", dir.display())));
    }
    Ok(files)
}

fn median(mut times: Vec<f64>) -> f64 {
    times.sort_by(f64::total_cmp);
    let mid = times.len() / 2;
    if times.len() % 2 == 1 {
        times[mid]
    } else {
        (times[mid - 1] + times[mid]) / 2.0
    }
}

pub fn run(
    corpus: &Path,
    algs: &[Algorithm],
    reps: usize,
    options: &SolveOptions,
    json: bool,
    csv: bool,
) -> Result<(), Failure> {
    let files = corpus_files(corpus)?;
    let reps = reps.max(1);
    let mut rows = Vec::new();
    for file in &files {
        let name = file.file_name().unwrap().to_string_lossy().into_owned();
        let instance = match load_instance(file) {
            Ok(i) => i,
            Err(f) => {
                rows.push(Row {
                    file: name,
                    algorithm: "-".into(),
                    time_ms: 0.0,
                    status: format!("input error: {}", f.message()),
                    answer: None,
                    optimal_cost: None,
                    stats: String::new(),
                    agree: None,
                });
                continue;
            }
        };
        let first = rows.len();
        for &alg in algs {
            let mut times = Vec::with_capacity(reps);
            let mut outcome = None;
            for _ in 0..reps {
                let start = Instant::now();
                let r = solve(&instance, alg, options);
                times.push(start.elapsed().as_secs_f64() * 1e3);
                outcome = Some(r);
            }
            let row = match outcome.unwrap() {
                Ok(r) => Row {
                    file: name.clone(),
                    algorithm: alg.name().into(),
                    time_ms: median(times),
                    status: "ok".into(),
                    answer: Some(r.answer),
                    optimal_cost: Some(r.optimal_cost),
                    stats: serde_json::to_string(&r.stats).unwrap(),
                    agree: None,
                },
                Err(e) => Row {
                    file: name.clone(),
                    algorithm: alg.name().into(),
                    time_ms: median(times),
                    status: e.code().into(),
                    answer: None,
                    optimal_cost: None,
                    stats: String::new(),
                    agree: None,
                },
            };
            rows.push(row);
        }
        if algs.len() > 1 {
            // Decision-only runs bound the cost only on YES, so compare answers alone.
            let key = |r: &Row| (r.answer, if options.decision_only { None } else { r.optimal_cost });
            let solved: Vec<_> = rows[first..].iter().filter(|r| r.status == "ok").map(key).collect();
            let agree = solved.windows(2).all(|w| w[0] == w[1]);
            for row in &mut rows[first..] {
                row.agree = Some(agree);
            }
        }
    }

    if json {
        println!("{}", serde_json::to_string(&rows).unwrap());
    } else if csv {
        let mut w = csv::Writer::from_writer(std::io::stdout());
        for row in &rows {
            w.serialize(CsvRow::from(row)).map_err(|e| Failure::Input(e.to_string()))?;
        }
        w.flush().map_err(|e| Failure::Input(e.to_string()))?;
    } else {
        print_table(&rows, algs.len() > 1);
    }
    Ok(())
}

#[derive(Serialize)]
struct CsvRow<'a> {
    file: &'a str,
    algorithm: &'a str,
    time_ms: String,
    status: &'a str,
    answer: String,
    optimal_cost: String,
    stats: &'a str,
    agree: String,
}

impl<'a> From<&'a Row> for CsvRow<'a> {
    fn from(r: &'a Row) -> Self {
        CsvRow {
            file: &r.file,
            algorithm: &r.algorithm,
            time_ms: format!("{:.3}", r.time_ms),
            status: &r.status,
            answer: answer_text(r.answer),
            optimal_cost: r.optimal_cost.map(|d| d.to_string()).unwrap_or_default(),
            stats: &r.stats,
            agree: r.agree.map(|a| a.to_string()).unwrap_or_default(),
        }
    }
}

fn answer_text(a: Option<Answer>) -> String {
    match a {
        Some(Answer::Yes) => "yes".into(),
        Some(Answer::No) => "no".into(),
        None => "-".into(),
    }
}

fn print_table(rows: &[Row], with_agree: bool) {
    let width = rows.iter().map(|r| r.file.len()).max().unwrap_or(4).max(4);
    print!("{:<width$}  {:<12} {:>10}  {:<6} {:>8}", "file", "algorithm", "time_ms", "answer", "cost");
    println!("{}", if with_agree { "  agree  status" } else { "  status" });
    for r in rows {
        let cost = r.optimal_cost.map(|d| d.to_string()).unwrap_or_else(|| "-".into());
        print!(
            "{:<width$}  {:<12} {:>10.3}  {:<6} {:>8}",
            r.file,
            r.algorithm,
            r.time_ms,
            answer_text(r.answer),
            cost
        );
        if with_agree {
            print!("  {:<5}", r.agree.map(|a| a.to_string()).unwrap_or_default());
        }
        println!("  {}", r.status);
    }
}
