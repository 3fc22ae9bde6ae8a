fn main() -> std::process::ExitCode {
    qschubert::cli::main()
}
