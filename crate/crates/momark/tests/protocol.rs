//! External ask-tell protocol sessions against the reference client.

use momark::pareto::DecisionVector;
use momark::problems::Registry;
use momark::solvers::{external_solver_session, SolverError};

fn client_cmd(args: &[&str]) -> Vec<String> {
    let mut cmd = vec![
        env!("CARGO_BIN_EXE_momark").to_string(),
        "client".to_string(),
    ];
    cmd.extend(args.iter().map(|s| s.to_string()));
    cmd
}

#[test]
fn midpoint_child_echoes_budget_points() {
    let registry = Registry::core();
    let problem = registry.lookup("BK1").unwrap();
    let command = client_cmd(&["midpoint"]);
    let session = external_solver_session(&command, &problem, 10, 0).unwrap();
    let points: Vec<_> = session.map(|r| r.unwrap()).collect();
    assert_eq!(points.len(), 10);
    let mid = problem.evaluate(&DecisionVector(vec![2.5, 2.5])).unwrap();
    for (i, (fe, f)) in points.iter().enumerate() {
        assert_eq!(*fe, i as u64 + 1);
        assert_eq!(f, &mid);
    }
}

#[test]
fn bad_arity_is_a_protocol_error() {
    let registry = Registry::core();
    let problem = registry.lookup("BK1").unwrap(); // n = 2
    let command = client_cmd(&["midpoint", "--bad-arity"]);
    let mut session = external_solver_session(&command, &problem, 5, 0).unwrap();
    match session.next() {
        Some(Err(SolverError::Protocol { line, message })) => {
            assert_eq!(line, 1);
            assert!(message.contains("coordinates"), "{message}");
        }
        other => panic!("expected protocol error, got {other:?}"),
    }
    assert!(session.next().is_none(), "session ends after the error");
}

#[test]
fn early_exit_truncates_stream() {
    let registry = Registry::core();
    let problem = registry.lookup("BK1").unwrap();
    let command = client_cmd(&["midpoint", "--stop-after", "3"]);
    let session = external_solver_session(&command, &problem, 10, 0).unwrap();
    let points: Vec<_> = session.map(|r| r.unwrap()).collect();
    assert_eq!(points.len(), 3);
}

#[test]
fn out_of_bounds_request_is_a_domain_error() {
    let registry = Registry::core();
    let problem = registry.lookup("MOP6").unwrap(); // [0,1]^2
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("points.txt");
    std::fs::write(&path, "0.5 0.5\n0.5 1.5\n0.25 0.25\n").unwrap();
    let command = client_cmd(&["replay", path.to_str().unwrap()]);
    let mut session = external_solver_session(&command, &problem, 10, 0).unwrap();
    assert!(session.next().unwrap().is_ok());
    match session.next() {
        Some(Err(SolverError::Problem(e))) => {
            assert!(e.to_string().contains("outside"), "{e}");
        }
        other => panic!("expected domain error, got {other:?}"),
    }
    assert!(session.next().is_none());
}

#[test]
fn replay_round_trip_preserves_the_stream() {
    // any in-bounds stream replayed through the protocol is recorded
    // identically to evaluating it directly
    let registry = Registry::core();
    let problem = registry.lookup("Kursawe").unwrap();
    let meta = problem.meta().clone();
    let mut state = 0x5eed_5eedu64;
    let mut next = move || {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        (state >> 11) as f64 / (1u64 << 53) as f64
    };
    let points: Vec<Vec<f64>> = (0..40)
        .map(|_| {
            (0..meta.n)
                .map(|i| meta.lower[i] + next() * (meta.upper[i] - meta.lower[i]))
                .collect()
        })
        .collect();
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("points.txt");
    let text: String = points
        .iter()
        .map(|p| {
            p.iter()
                .map(|v| v.to_string())
                .collect::<Vec<_>>()
                .join(" ")
                + "\n"
        })
        .collect();
    std::fs::write(&path, text).unwrap();

    let command = client_cmd(&["replay", path.to_str().unwrap()]);
    let session = external_solver_session(&command, &problem, 40, 0).unwrap();
    let recorded: Vec<_> = session.map(|r| r.unwrap()).collect();
    assert_eq!(recorded.len(), 40);
    for (i, (fe, f)) in recorded.iter().enumerate() {
        assert_eq!(*fe, i as u64 + 1);
        let direct = problem
            .evaluate(&DecisionVector(points[i].clone()))
            .unwrap();
        assert_eq!(f, &direct, "point {i} diverged through the wire");
    }
}

#[test]
fn spawn_failure_is_reported() {
    let registry = Registry::core();
    let problem = registry.lookup("BK1").unwrap();
    let command = vec!["/nonexistent/solver".to_string()];
    match external_solver_session(&command, &problem, 5, 0) {
        Err(SolverError::Spawn { command, .. }) => {
            assert!(command.contains("nonexistent"));
        }
        Err(other) => panic!("expected spawn error, got {other:?}"),
        Ok(_) => panic!("expected spawn error, got a session"),
    };
}
