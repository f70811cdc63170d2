use blobgt_blocks::block_data;
use blobgt_klr::field::{Field, F5};
use blobgt_klr::{verify_identity, Engine, EngineConfig, Verdict, IDENTITY_NAMES};
use blobgt_residue::ctx_from_residues;
use std::time::Instant;

fn run(e: u32, kappa: &[i64], m: usize) {
    let ctx = ctx_from_residues(e, 5, kappa, 0, m).unwrap();
    let bd = block_data(&ctx, 1, m).unwrap();
    let eng = Engine::<F5>::new(ctx, EngineConfig::default());
    for name in IDENTITY_NAMES {
        let t = Instant::now();
        let checks = verify_identity(&eng, name, &bd, None).unwrap();
        for c in &checks {
            assert_eq!(c.check.verdict, Verdict::Verified, "{name} {}: {}", c.label, c.trace);
        }
        eprintln!("{name}: {} instances in {:?}", checks.len(), t.elapsed());
    }
}

#[test]
fn all_identities_at_level_three() {
    run(7, &[0, 2, 4], 10);
}

#[test]
fn all_identities_at_level_four() {
    run(13, &[0, 4, 6, 10], 16);
}

#[test]
fn perturbed_sides_do_not_verify() {
    let ctx = ctx_from_residues(7, 5, &[0, 2, 4], 0, 10).unwrap();
    let bd = block_data(&ctx, 1, 10).unwrap();
    let eng = Engine::<F5>::new(ctx.clone(), EngineConfig::default());
    for name in ["diag-L", "HvsH", "clean-Y", "square-Y1j"] {
        for x in blobgt_klr::identity_instances::<F5>(name, &bd, &ctx).unwrap() {
            let wrong = x.rhs.scale(F5::from_i64(2));
            if x.lhs.is_zero() && x.rhs.is_zero() {
                continue;
            }
            let v = eng.equal(&x.lhs, &wrong).verdict;
            assert_ne!(v, Verdict::Verified, "{name} {} accepted a doubled side", x.label);
        }
    }
}

#[test]
fn identities_with_two_periods() {
    run(7, &[0, 2, 4], 17);
}
