use std::collections::hash_map::DefaultHasher;
use std::fs;
use std::hash::{Hash, Hasher};
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use lcpkit::io::{self, ArraySource, LcpWriter, OnDisk};
use lcpkit::{
    build_bwt, build_suffix_array, construct, corpus_stats, invert, lcp_bruteforce, lcp_go2,
    lcp_hybrid_external, lcp_kasai, load_text, Algo, BuildParams, Go2Config, Instruments, LcpArray,
    Result, SpaceLedger, SuffixArray, Text,
};

use crate::{BenchArgs, BuildArgs, Tuning};

/// Above this length `verify` checks against Kasai instead of direct
/// comparison.
const ORACLE_LIMIT: usize = 50_000;

fn sidecar(input: &Path, ext: &str) -> PathBuf {
    let mut s = input.as_os_str().to_owned();
    s.push(".");
    s.push(ext);
    PathBuf::from(s)
}

fn read_text(input: &Path) -> Result<Text> {
    load_text(&fs::read(input)?)
}

/// Suffix array and BWT sidecar files, rebuilt when missing or stale.
struct Prepared {
    sa_path: PathBuf,
    bwt_path: PathBuf,
}

fn prepare(input: &Path, t: &Text) -> Result<Prepared> {
    let sa_path = sidecar(input, "sa");
    let bwt_path = sidecar(input, "bwt");
    let mtime = |p: &Path| fs::metadata(p).and_then(|m| m.modified());
    let fresh = |p: &Path| matches!((mtime(p), mtime(input)), (Ok(a), Ok(b)) if a >= b);
    let cached = fresh(&sa_path)
        && fresh(&bwt_path)
        && OnDisk::open(&sa_path, &bwt_path).is_ok_and(|d| d.len() == t.len());
    if !cached {
        let sa = build_suffix_array(t);
        io::write_sa(&sa_path, &sa)?;
        io::write_bwt(&bwt_path, &build_bwt(t, &sa))?;
    }
    Ok(Prepared { sa_path, bwt_path })
}

fn params(t: &Tuning) -> BuildParams {
    BuildParams { m: t.m, queue_buf: t.queue_buf, tmp_dir: t.tmp.clone() }
}

fn work_dir(t: &Tuning) -> PathBuf {
    t.tmp.clone().unwrap_or_else(std::env::temp_dir)
}

/// Runs one construction. go2 and hybrid stream SA and BWT from the
/// sidecar files; the others load them.
fn run(algo: Algo, t: &Text, prep: &Prepared, tuning: &Tuning, ins: &mut Instruments) -> Result<LcpArray> {
    match algo {
        Algo::Go2 | Algo::Hybrid => {
            let src = OnDisk::open(&prep.sa_path, &prep.bwt_path)?;
            let mut out = Vec::with_capacity(t.len() + 1);
            if algo == Algo::Go2 {
                let cfg = Go2Config { queue_buf: tuning.queue_buf, tmp_dir: tuning.tmp.clone() };
                lcp_go2(t, &src, &cfg, &mut out, ins)?;
            } else {
                lcp_hybrid_external(t, &src, tuning.m, &work_dir(tuning), &mut out, ins)?;
            }
            out.push(-1);
            Ok(LcpArray::from_vec(out))
        }
        _ => {
            let sa = io::read_sa(&prep.sa_path)?;
            let bwt = match algo {
                Algo::Go => Some(io::read_bwt(&prep.bwt_path)?),
                _ => None,
            };
            construct(algo, t, &sa, bwt.as_ref(), &params(tuning), ins)
        }
    }
}

fn print_ledger(ledger: &SpaceLedger) {
    println!("peak resident arrays: {} bytes", ledger.peak());
    for phase in ["phase 1", "phase 2"] {
        if let (Some(peak), Some(parts)) = (ledger.phase_peak(phase), ledger.phase_breakdown(phase)) {
            let parts: Vec<String> = parts.iter().map(|(k, v)| format!("{k}={v}")).collect();
            println!("  {phase}: {peak} bytes ({})", parts.join(", "));
        }
    }
    if ledger.phase_peak("phase 1").is_none() {
        let parts: Vec<String> = ledger.live().iter().map(|(k, v)| format!("{k}={v}")).collect();
        println!("  arrays: {}", parts.join(", "));
    }
}

pub fn build(a: &BuildArgs) -> Result<ExitCode> {
    let t = read_text(&a.input)?;
    let prep = prepare(&a.input, &t)?;
    let out_path = a.out.clone().unwrap_or_else(|| sidecar(&a.input, "lcp"));
    let mut ins = Instruments::new();
    let start = Instant::now();
    match a.algo {
        Algo::Go2 | Algo::Hybrid => {
            // stream straight into the output file
            let src = OnDisk::open(&prep.sa_path, &prep.bwt_path)?;
            let mut w = LcpWriter::create(&out_path, t.len())?;
            if a.algo == Algo::Go2 {
                let cfg = Go2Config { queue_buf: a.tuning.queue_buf, tmp_dir: a.tuning.tmp.clone() };
                lcp_go2(&t, &src, &cfg, &mut w, &mut ins)?;
            } else {
                lcp_hybrid_external(&t, &src, a.tuning.m, &work_dir(&a.tuning), &mut w, &mut ins)?;
            }
            w.finish()?;
        }
        algo => {
            let lcp = run(algo, &t, &prep, &a.tuning, &mut ins)?;
            io::write_lcp(&out_path, &lcp)?;
        }
    }
    let wall = start.elapsed();
    println!("algo: {}", a.algo);
    println!("n: {}", t.len());
    println!("wall: {:.6} s", wall.as_secs_f64());
    println!("character comparisons: {}", ins.counters.char_comparisons);
    print_ledger(&ins.ledger);
    println!("output: {}", out_path.display());
    Ok(ExitCode::SUCCESS)
}

pub fn verify(input: &Path, lcp_path: &Path) -> Result<ExitCode> {
    let t = read_text(input)?;
    let got = io::read_lcp(lcp_path)?;
    if got.len() != t.len() {
        println!("mismatch: LCP file has {} entries, text has {}", got.len(), t.len());
        return Ok(ExitCode::FAILURE);
    }
    let sa: SuffixArray = build_suffix_array(&t);
    let (reference, name) = if t.len() <= ORACLE_LIMIT {
        (lcp_bruteforce(&t, &sa), "brute")
    } else {
        (lcp_kasai(&t, &sa, &invert(&sa)), "kasai")
    };
    match reference.as_slice().iter().zip(got.as_slice()).position(|(a, b)| a != b) {
        None => {
            println!("ok: {} entries match {name}", t.len());
            Ok(ExitCode::SUCCESS)
        }
        Some(i) => {
            println!("mismatch at index {i}: expected {}, found {}", reference[i], got[i]);
            Ok(ExitCode::FAILURE)
        }
    }
}

pub fn stats(input: &Path, ms: &[u32], csv: Option<&Path>) -> Result<ExitCode> {
    let t = read_text(input)?;
    let prep = prepare(input, &t)?;
    let sa = io::read_sa(&prep.sa_path)?;
    let bwt = io::read_bwt(&prep.bwt_path)?;
    let lcp = lcp_kasai(&t, &sa, &invert(&sa));
    let st = corpus_stats(&t, &sa, &bwt, &lcp, ms);

    let mut rows: Vec<(String, String)> = vec![
        ("n".into(), st.n.to_string()),
        ("sigma_effective".into(), st.sigma_effective.to_string()),
        ("bwt_runs".into(), st.bwt_runs.to_string()),
        ("irreducible_count".into(), st.irreducible_count.to_string()),
        ("max_lcp".into(), st.max_lcp.to_string()),
        ("mean_lcp".into(), format!("{:.4}", st.mean_lcp)),
    ];
    for (m, f) in &st.fraction_lcp_above_m {
        rows.push((format!("fraction_lcp_above_{m}"), format!("{f:.6}")));
    }
    let width = rows.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
    for (k, v) in &rows {
        println!("{k:<width$}  {v}");
    }
    if let Some(path) = csv {
        let mut f = fs::File::create(path)?;
        writeln!(f, "{}", rows.iter().map(|(k, _)| k.as_str()).collect::<Vec<_>>().join(","))?;
        writeln!(f, "{}", rows.iter().map(|(_, v)| v.as_str()).collect::<Vec<_>>().join(","))?;
    }
    Ok(ExitCode::SUCCESS)
}

pub const CSV_HEADER: &str =
    "algo,n,wall_seconds,char_comparisons,text_accesses,peak_resident_bytes,lcp_hash";

struct BenchRow {
    algo: Algo,
    n: usize,
    wall: Duration,
    ins: Instruments,
    hash: u64,
}

fn lcp_hash(lcp: &LcpArray) -> u64 {
    let mut h = DefaultHasher::new();
    lcp.as_slice().hash(&mut h);
    h.finish()
}

fn bench_one(algo: Algo, t: &Text, prep: &Prepared, tuning: &Tuning, repeat: usize) -> Result<BenchRow> {
    let mut times = Vec::with_capacity(repeat);
    let mut last = None;
    for _ in 0..repeat.max(1) {
        let mut ins = Instruments::new();
        let start = Instant::now();
        let lcp = run(algo, t, prep, tuning, &mut ins)?;
        times.push(start.elapsed());
        last = Some((lcp, ins));
    }
    times.sort();
    let (lcp, ins) = last.unwrap();
    Ok(BenchRow { algo, n: t.len(), wall: times[times.len() / 2], ins, hash: lcp_hash(&lcp) })
}

pub fn bench(a: &BenchArgs) -> Result<ExitCode> {
    let t = read_text(&a.input)?;
    let prep = prepare(&a.input, &t)?;
    let algos: Vec<Algo> = if a.algo.is_empty() { Algo::ALL.to_vec() } else { a.algo.clone() };

    let rows: Vec<BenchRow> = if a.parallel {
        let parent = work_dir(&a.tuning);
        std::thread::scope(|s| {
            let handles: Vec<_> = algos
                .iter()
                .map(|&algo| {
                    let (t, prep, parent) = (&t, &prep, &parent);
                    let mut tuning = a.tuning.clone();
                    s.spawn(move || {
                        let dir = tempfile::Builder::new().prefix("lcpkit-bench").tempdir_in(parent)?;
                        tuning.tmp = Some(dir.path().to_path_buf());
                        bench_one(algo, t, prep, &tuning, a.repeat)
                    })
                })
                .collect();
            handles.into_iter().map(|h| h.join().expect("bench thread panicked")).collect::<Result<_>>()
        })?
    } else {
        algos.iter().map(|&algo| bench_one(algo, &t, &prep, &a.tuning, a.repeat)).collect::<Result<_>>()?
    };

    let mut out: Box<dyn Write> = match &a.csv {
        Some(p) => Box::new(fs::File::create(p)?),
        None => Box::new(std::io::stdout().lock()),
    };
    writeln!(out, "{CSV_HEADER}")?;
    for r in &rows {
        writeln!(
            out,
            "{},{},{:.6},{},{},{},{:016x}",
            r.algo,
            r.n,
            r.wall.as_secs_f64(),
            r.ins.counters.char_comparisons,
            r.ins.counters.text_accesses,
            r.ins.ledger.peak(),
            r.hash
        )?;
    }
    out.flush()?;
    let agree = rows.windows(2).all(|w| w[0].hash == w[1].hash);
    if !agree {
        eprintln!("lcpkit: algorithms disagree on the LCP array");
        return Ok(ExitCode::FAILURE);
    }
    Ok(ExitCode::SUCCESS)
}
