fn main() -> std::process::ExitCode {
    allee_core::cli::main()
}
