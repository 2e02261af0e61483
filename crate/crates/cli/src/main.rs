use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{CommandFactory, Parser};
use coriolis_cli::{balance, report, serve, simulate, Cli, CliError, Command, ServeOptions};

fn fail(subcommand: &str, err: CliError) -> ExitCode {
    match err {
        CliError::Usage(msg) => {
            let mut cmd = Cli::command();
            let sub = cmd
                .find_subcommand_mut(subcommand)
                .expect("known subcommand")
                .clone();
            // Prints the message with the subcommand usage and exits with 2.
            sub.bin_name(format!("coriolis {subcommand}"))
                .error(ErrorKind::ValueValidation, msg)
                .exit()
        }
        CliError::Io(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Simulate(args) => match simulate(&args) {
            Ok(summary) => {
                println!("{summary}");
                ExitCode::SUCCESS
            }
            Err(e) => fail("simulate", e),
        },
        Command::Balance(args) => match balance(&args) {
            Ok(out) => {
                print!("{out}");
                ExitCode::SUCCESS
            }
            Err(e) => fail("balance", e),
        },
        Command::Report(args) => match report(&args) {
            Ok(out) => {
                print!("{out}");
                ExitCode::SUCCESS
            }
            Err(e) => fail("report", e),
        },
        Command::Serve(args) => {
            let (opts, addr) = match ServeOptions::from_args(&args) {
                Ok(v) => v,
                Err(e) => return fail("serve", e),
            };
            let rt = tokio::runtime::Runtime::new().expect("tokio runtime");
            let result = rt.block_on(async move {
                let listener = tokio::net::TcpListener::bind(addr).await?;
                eprintln!("listening on ws://{}/ws", listener.local_addr()?);
                tokio::select! {
                    r = serve(listener, opts) => r,
                    _ = tokio::signal::ctrl_c() => Ok(()),
                }
            });
            match result {
                Ok(()) => ExitCode::SUCCESS,
                Err(e) => {
                    eprintln!("error: {e}");
                    ExitCode::from(1)
                }
            }
        }
    }
}
