//! End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and
//! exits non-zero when any criterion fails.

use std::panic::{self, AssertUnwindSafe};
use std::path::PathBuf;
use std::time::{Duration, Instant};

use facetmine::testkit::{
    brute_force_frequent, random_database, verify_partition, RandomDbSpec, SeededSource,
};
use facetmine::{
    compress_frequent, face_count_polynomial, facets_to_faces, max_sieve, mine_frequent,
    seed_from_facets, support, CompressedComplex, FacetMiner, FrequencyOracle, ItemSet,
    MinerOptions, MiningConfig, Row012e, TransactionDb, Universe,
};
use facetmine_cli::input::{into_itemsets, parse_item_lines};
use facetmine_cli::parse_transactions;
use num_bigint::BigUint;

type Check = Result<(), String>;
type Criterion = (usize, &'static str, fn() -> Check);

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

fn fixture(name: &str) -> Vec<u8> {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../fixtures")
        .join(name);
    std::fs::read(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()))
}

fn db(name: &str) -> TransactionDb {
    parse_transactions(&fixture(name)).expect("fixture parses")
}

fn set(u: Universe, items: impl IntoIterator<Item = usize>) -> ItemSet {
    ItemSet::from_items(u, items).expect("items inside the universe")
}

fn alpha(a: usize) -> MiningConfig {
    MiningConfig::new(a).expect("positive threshold")
}

fn sorted(mut v: Vec<ItemSet>) -> Vec<ItemSet> {
    v.sort();
    v
}

/// F1..F4: the universe minus one block of four, blocks in order.
fn table1_facets(u: Universe) -> Vec<ItemSet> {
    (1..=4usize)
        .map(|k| set(u, (1..=16).filter(|i| !(4 * k - 3..=4 * k).contains(i))))
        .collect()
}

fn table2(u: Universe) -> Result<CompressedComplex, String> {
    facets_to_faces(&table1_facets(u), u).map_err(|e| e.to_string())
}

fn criterion_1() -> Check {
    let db = db("table1.dat");
    let u = db.universe();
    ensure!(
        u.size() == 16 && db.len() == 8,
        "fixture shape {}x{}",
        db.len(),
        u.size()
    );
    let mined = sorted(mine_frequent(&db, alpha(2)));
    ensure!(mined == sorted(table1_facets(u)), "facets {mined:?}");

    let c = table2(u)?;
    let want = [
        ("0 0 0 0 2 2 2 2 2 2 2 2 2 2 2 2", 4096u32),
        ("e e e e 0 0 0 0 2 2 2 2 2 2 2 2", 3840),
        ("e1 e1 e1 e1 e2 e2 e2 e2 0 0 0 0 2 2 2 2", 3600),
        ("e1 e1 e1 e1 e2 e2 e2 e2 e3 e3 e3 e3 0 0 0 0", 3375),
    ];
    ensure!(c.rows().len() == 4, "{} rows", c.rows().len());
    for (row, (text, count)) in c.rows().iter().zip(want) {
        ensure!(row.to_text() == text, "row {} != {text}", row.to_text());
        ensure!(row.cardinality() == BigUint::from(count), "count of {text}");
    }
    ensure!(
        c.total_count() == BigUint::from(14911u32),
        "total {}",
        c.total_count()
    );
    Ok(())
}

fn criterion_2() -> Check {
    let u = Universe::new(16).unwrap();
    let c = table2(u)?;
    let poly = face_count_polynomial(&c.rows()[2]);
    ensure!(poly[7] == BigUint::from(776u32), "x^7 of r3 = {}", poly[7]);
    let k7 = c.count_faces_of_size(7);
    ensure!(k7 == BigUint::from(3120u32), "size 7 faces = {k7}");
    let x = set(u, [7, 8, 9]);
    let per_row = c.superset_counts(&x).map_err(|e| e.to_string())?;
    let want: Vec<BigUint> = [512u32, 0, 0, 480].into_iter().map(BigUint::from).collect();
    ensure!(per_row == want, "per row {per_row:?}");
    let total = c.count_supersets(&x).map_err(|e| e.to_string())?;
    ensure!(total == BigUint::from(992u32), "supersets = {total}");
    Ok(())
}

fn criterion_3() -> Check {
    let lists = parse_item_lines(&fixture("table3.dat")).map_err(|e| e.to_string())?;
    let (u, family) = into_itemsets(lists, None).map_err(|e| e.to_string())?;
    ensure!(family.len() == 15, "{} members", family.len());
    let mut found = max_sieve(&family, u).map_err(|e| e.to_string())?;
    found.sort_unstable();
    ensure!(found == [3, 5, 7, 13, 14], "maxsets {found:?}");
    Ok(())
}

fn table4_facets(u: Universe) -> Vec<ItemSet> {
    sorted(
        [
            vec![1, 3, 6, 7, 9],
            vec![1, 2, 3, 5, 6, 7],
            vec![2, 4, 5, 8, 9],
            vec![1, 2, 5, 7, 9],
            vec![3, 4, 6, 7, 8],
            vec![1, 2, 4, 5, 7, 8],
            vec![4, 7, 8, 9],
        ]
        .into_iter()
        .map(|x| set(u, x))
        .collect(),
    )
}

fn criterion_4() -> Check {
    let db = db("table4.dat");
    let u = db.universe();
    ensure!(
        u.size() == 9 && db.len() == 6,
        "fixture shape {}x{}",
        db.len(),
        u.size()
    );
    let mined = sorted(mine_frequent(&db, alpha(2)));
    ensure!(mined == table4_facets(u), "facets {mined:?}");
    let c = compress_frequent(&db, alpha(2)).map_err(|e| e.to_string())?;
    ensure!(
        c.total_count() == BigUint::from(173u32),
        "total {}",
        c.total_count()
    );
    ensure!(
        c.rows_per_facet() == [1; 7],
        "rows per facet {:?}",
        c.rows_per_facet()
    );
    Ok(())
}

fn criterion_5() -> Check {
    let db = db("table4.dat");
    let u = db.universe();
    let oracle = FrequencyOracle::new(&db, alpha(2));
    let state = seed_from_facets(&[set(u, [1, 3, 6, 7, 9])], u).map_err(|e| e.to_string())?;
    let mut miner = FacetMiner::resume(&oracle, MinerOptions::default(), state);
    let second = miner.step().ok_or("no second facet")?;
    ensure!(
        second == set(u, [1, 2, 3, 5, 6, 7]),
        "second facet {second:?}"
    );
    let want = sorted(vec![
        set(u, [4]),
        set(u, [8]),
        set(u, [2, 9]),
        set(u, [5, 9]),
    ]);
    let got = sorted(miner.state().generators().to_vec());
    ensure!(got == want, "generators after first update {got:?}");
    while miner.step().is_some() {}
    ensure!(miner.state().is_exhausted(), "generators left over");
    let facets = sorted(miner.state().facets().to_vec());
    ensure!(facets == table4_facets(u), "facets {facets:?}");
    Ok(())
}

fn criterion_6() -> Check {
    let mut source = SeededSource::new(6);
    for case in 0..200 {
        let spec = RandomDbSpec {
            seed: source.next_u64(),
            universe_size: 1 + source.below(12) as usize,
            transactions: 1 + source.below(20) as usize,
            density: 0.2 + 0.6 * unit(&mut source),
        };
        let a = 1 + source.below(4) as usize;
        let db = random_database(spec).map_err(|e| e.to_string())?;
        let u = db.universe();
        let reference = brute_force_frequent(&db, a).map_err(|e| e.to_string())?;

        let want = if reference.is_empty() {
            Vec::new()
        } else {
            let idx = max_sieve(&reference, u).map_err(|e| e.to_string())?;
            sorted(idx.into_iter().map(|j| reference[j - 1].clone()).collect())
        };
        let got = sorted(mine_frequent(&db, alpha(a)));
        ensure!(
            got == want,
            "case {case} ({spec:?}, alpha {a}): facets differ"
        );

        let c = compress_frequent(&db, alpha(a)).map_err(|e| e.to_string())?;
        let report = verify_partition(&c, &reference).map_err(|e| e.to_string())?;
        ensure!(report.is_ok(), "case {case}: {report:?}");

        for _ in 0..20 {
            let x = source.bernoulli_subset(u, 0.25);
            let brute = reference.iter().filter(|f| f.is_superset(&x)).count();
            let fast = c.count_supersets(&x).map_err(|e| e.to_string())?;
            ensure!(
                fast == BigUint::from(brute),
                "case {case}: supersets of {x:?}"
            );
        }
        for _ in 0..20 {
            let k = source.below(u.size() as u64 + 2) as usize;
            let brute = reference.iter().filter(|f| f.len() == k).count();
            let fast = c.count_faces_of_size(k);
            ensure!(
                fast == BigUint::from(brute),
                "case {case}: faces of size {k}"
            );
        }
    }
    Ok(())
}

/// Uniform in `[0, 1)`.
fn unit(source: &mut SeededSource) -> f64 {
    (source.next_u64() >> 11) as f64 / (1u64 << 53) as f64
}

/// Each position drawn as 0, 1, 2 or one of three group labels; groups left
/// with a single member become fixed ones inside the constructor.
fn random_row(source: &mut SeededSource, u: Universe) -> Result<Row012e, String> {
    let mut parts = vec![ItemSet::empty(u); 6];
    for i in u.items() {
        parts[source.below(6) as usize].insert(i);
    }
    let egroups = parts[3..]
        .iter()
        .filter(|g| !g.is_empty())
        .cloned()
        .collect();
    Row012e::new(
        parts[1].clone(),
        parts[0].clone(),
        parts[2].clone(),
        egroups,
    )
    .map_err(|e| e.to_string())
}

fn criterion_7() -> Check {
    let mut source = SeededSource::new(7);

    for case in 0..60 {
        let w = 1 + source.below(16) as usize;
        let u = Universe::new(w).unwrap();
        let row = random_row(&mut source, u)?;

        let mut seen = row.ones().union(row.zeros()).union(row.dontcares());
        let mut disjoint_sum = row.ones().len() + row.zeros().len() + row.dontcares().len();
        for g in row.egroups() {
            ensure!(g.len() >= 2, "case {case}: group {g:?} too small");
            seen.union_with(g);
            disjoint_sum += g.len();
        }
        ensure!(
            seen == ItemSet::full(u) && disjoint_sum == w,
            "case {case}: positions of {row} are not a partition"
        );

        let members = (0u32..1 << w)
            .filter(|&m| {
                let x = set(u, (1..=w).filter(|i| m >> (i - 1) & 1 == 1));
                row.contains(&x).unwrap()
            })
            .count();
        ensure!(
            row.cardinality() == BigUint::from(members),
            "case {case}: {row} has {members} members"
        );
        let at_one: BigUint = face_count_polynomial(&row).into_iter().sum();
        ensure!(
            at_one == row.cardinality(),
            "case {case}: polynomial of {row}"
        );
    }

    for case in 0..60 {
        let spec = RandomDbSpec {
            seed: source.next_u64(),
            universe_size: 1 + source.below(10) as usize,
            transactions: 1 + source.below(16) as usize,
            density: 0.5,
        };
        let db = random_database(spec).map_err(|e| e.to_string())?;
        let u = db.universe();
        for _ in 0..20 {
            let y = source.bernoulli_subset(u, 0.5);
            let x = source.bernoulli_subset(u, 0.5).intersection(&y);
            ensure!(
                support(&db, &x) >= support(&db, &y),
                "case {case}: support grows from {x:?} to {y:?}"
            );
        }

        let a = 1 + source.below(3) as usize;
        let family = brute_force_frequent(&db, a).map_err(|e| e.to_string())?;
        for f in &family {
            for i in f.iter() {
                let mut smaller = f.clone();
                smaller.remove(i);
                ensure!(
                    family.binary_search(&smaller).is_ok(),
                    "case {case}: {smaller:?} missing below {f:?}"
                );
            }
        }

        let mut facets = mine_frequent(&db, alpha(a));
        let base = facets_to_faces(&facets, u)
            .map_err(|e| e.to_string())?
            .total_count();
        for _ in 0..3 {
            shuffle(&mut source, &mut facets);
            let total = facets_to_faces(&facets, u)
                .map_err(|e| e.to_string())?
                .total_count();
            ensure!(total == base, "case {case}: total {total} != {base}");
        }
    }
    Ok(())
}

fn shuffle<T>(source: &mut SeededSource, v: &mut [T]) {
    for i in (1..v.len()).rev() {
        v.swap(i, source.below(i as u64 + 1) as usize);
    }
}

const SCALE_BUDGET: Duration = Duration::from_secs(60);

fn criterion_8() -> Check {
    let mut source = SeededSource::new(8);
    let u = Universe::new(200).unwrap();
    let mut facets: Vec<ItemSet> = Vec::new();
    while facets.len() < 10 {
        let f = source.subset_of_size(u, 40);
        if !facets.contains(&f) {
            facets.push(f);
        }
    }

    let start = Instant::now();
    let c = facets_to_faces(&facets, u).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    ensure!(elapsed <= SCALE_BUDGET, "compression took {elapsed:?}");

    for sample in 0..100_000 {
        let facet = &facets[source.below(facets.len() as u64) as usize];
        let mut x = ItemSet::empty(u);
        for i in facet.iter() {
            if source.bernoulli(0.5) {
                x.insert(i);
            }
        }
        let hits = c.rows().iter().filter(|r| r.contains(&x).unwrap()).count();
        ensure!(hits <= 1, "sample {sample}: {x:?} lies in {hits} rows");
        ensure!(hits == 1, "sample {sample}: {x:?} lies in no row");
    }

    let base = c.total_count();
    for round in 0..3 {
        shuffle(&mut source, &mut facets);
        let total = facets_to_faces(&facets, u)
            .map_err(|e| e.to_string())?
            .total_count();
        ensure!(
            total == base,
            "permutation {round}: total {total} != {base}"
        );
    }
    Ok(())
}

fn main() {
    let criteria: [Criterion; 8] = [
        (1, "table 1 pipeline", criterion_1),
        (2, "face and superset counts", criterion_2),
        (3, "table 3 max-sieve", criterion_3),
        (4, "table 4 pipeline", criterion_4),
        (5, "generator states", criterion_5),
        (6, "brute-force equivalence", criterion_6),
        (7, "invariants", criterion_7),
        (8, "scale smoke test", criterion_8),
    ];
    let mut failed = 0;
    for (n, name, check) in criteria {
        let start = Instant::now();
        let outcome = panic::catch_unwind(AssertUnwindSafe(check))
            .unwrap_or_else(|_| Err("panicked".to_string()));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(()) => println!("criterion {n}: PASS  {name} ({secs:.2}s)"),
            Err(why) => {
                failed += 1;
                println!("criterion {n}: FAIL  {name} ({secs:.2}s): {why}");
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
